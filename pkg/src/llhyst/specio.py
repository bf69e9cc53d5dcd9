"""Experiment specifications: TOML parsing, serialization, bundled presets.

An experiment spec is one human-readable TOML document per experiment.
Presets ship as files under ``llhyst/presets`` so reproduction recipes stay
diffable; :func:`expand_spec` fills every default in, making the spec that
is echoed into run records fully explicit.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field, asdict

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from llhyst.systems import FIELD_SYSTEMS, ODE_SYSTEMS, SYSTEM_NAMES, default_config


class SpecError(ValueError):
    """Invalid experiment specification."""


_TOP_KEYS = {"name", "system", "params", "input", "initial", "sweep",
             "probe", "integrator", "outputs", "spectrum"}

_INTEGRATOR_KEYS = {"dt", "discard_periods", "samples_per_period", "project"}

_INTEGRATOR_DEFAULTS = {"discard_periods": 2, "samples_per_period": 2000}


@dataclass
class ExperimentSpec:
    """In-memory form of one experiment document."""

    system: str
    params: dict = field(default_factory=dict)
    input: dict = field(default_factory=dict)
    initial: dict = field(default_factory=dict)
    sweep: list = field(default_factory=list)
    probe: dict | None = None
    integrator: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    spectrum: dict | None = None
    name: str | None = None

    def single_omega(self) -> float:
        om = self.input.get("omega")
        if om is None:
            raise SpecError("spec has no input.omega (required for simulate)")
        return float(om)


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise SpecError(msg)


def parse_spec(text: str) -> ExperimentSpec:
    """Parse and validate a TOML experiment document."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise SpecError(f"not valid TOML: {exc}") from exc
    unknown = set(data) - _TOP_KEYS
    _check(not unknown, f"unknown top-level keys: {sorted(unknown)}")
    _check("system" in data, "missing required key 'system'")
    system = data["system"]
    _check(system in SYSTEM_NAMES,
           f"unknown system '{system}' (choose from {', '.join(SYSTEM_NAMES)})")

    spec = ExperimentSpec(
        system=system,
        params=dict(data.get("params", {})),
        input=dict(data.get("input", {})),
        initial=dict(data.get("initial", {})),
        sweep=list(data.get("sweep", {}).get("omegas", [])),
        probe=dict(data["probe"]) if "probe" in data else None,
        integrator=dict(data.get("integrator", {})),
        outputs=dict(data.get("outputs", {})),
        spectrum=dict(data["spectrum"]) if "spectrum" in data else None,
        name=data.get("name"),
    )
    validate_spec(spec)
    return spec


def validate_spec(spec: ExperimentSpec) -> None:
    _check(spec.system in SYSTEM_NAMES, f"unknown system '{spec.system}'")
    if spec.system in ODE_SYSTEMS:
        allowed = {"c", "k"}
    else:
        allowed = {"nu", "L", "n"} | ({"a"} if spec.system == "ll-linear" else set())
    unknown = set(spec.params) - allowed
    _check(not unknown, f"unknown params for {spec.system}: {sorted(unknown)}")

    inp = spec.input
    if inp:
        _check(inp.get("shape", "sine") in ("sine", "cosine"),
               "input.shape must be 'sine' or 'cosine'")
        if "omega" in inp:
            _check(float(inp["omega"]) > 0, "input.omega must be positive")
        if "channel" in inp:
            _check(inp["channel"] in (1, 2, 3), "input.channel must be 1..3")
    if spec.sweep:
        oms = [float(w) for w in spec.sweep]
        _check(all(w > 0 for w in oms), "sweep omegas must be positive")
        _check(all(a > b for a, b in zip(oms, oms[1:])),
               "sweep omegas must be strictly decreasing")
    unknown = set(spec.integrator) - _INTEGRATOR_KEYS
    _check(not unknown, f"unknown integrator keys: {sorted(unknown)}")
    if spec.probe is not None:
        _check(spec.system in FIELD_SYSTEMS,
               "probe block only applies to the field systems")
        _check(spec.probe.get("channel", 1) in (1, 2, 3),
               "probe.channel must be 1..3")
    if spec.spectrum is not None:
        _check(spec.system == "ll-linear",
               "spectrum block requires system = 'll-linear'")
        _check(int(spec.spectrum.get("max_mode", 5)) >= 0,
               "spectrum.max_mode must be nonnegative")


def expand_spec(spec: ExperimentSpec) -> ExperimentSpec:
    """Fill in every default, producing a fully explicit spec."""
    base = default_config(spec.system)
    params = dict(base["params"])
    params.update(spec.params)
    inp = dict(base["input"])
    inp.update(spec.input)
    initial = dict(base["initial"])
    initial.update(spec.initial)
    probe = None
    if spec.system in FIELD_SYSTEMS:
        probe = dict(base["probe"])
        if spec.probe:
            probe.update(spec.probe)
    integrator = dict(_INTEGRATOR_DEFAULTS)
    if spec.system == "ll-nonlinear":
        integrator["project"] = False
    integrator.update(spec.integrator)
    outputs = {"csv": True, "plot": False}
    outputs.update(spec.outputs)
    spectrum = None
    if spec.spectrum is not None:
        spectrum = {"max_mode": 5}
        spectrum.update(spec.spectrum)
    out = ExperimentSpec(spec.system, params, inp, initial,
                         list(spec.sweep), probe, integrator, outputs,
                         spectrum, spec.name)
    validate_spec(out)
    return out


def _toml_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        r = repr(v)
        return r if ("." in r or "e" in r) else r + ".0"
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_toml_value(x) for x in v) + "]"
    raise SpecError(f"cannot serialize value {v!r}")


def serialize_spec(spec: ExperimentSpec) -> str:
    """Render a spec back to TOML; parse(serialize(s)) == s field-for-field."""
    lines = []
    if spec.name is not None:
        lines.append(f"name = {_toml_value(spec.name)}")
    lines.append(f"system = {_toml_value(spec.system)}")

    def block(header: str, payload: dict | None):
        if not payload:
            return
        lines.append("")
        lines.append(f"[{header}]")
        for key, val in payload.items():
            lines.append(f"{key} = {_toml_value(val)}")

    block("params", spec.params)
    block("input", spec.input)
    block("initial", spec.initial)
    if spec.sweep:
        block("sweep", {"omegas": list(spec.sweep)})
    block("probe", spec.probe)
    block("integrator", spec.integrator)
    block("outputs", spec.outputs)
    block("spectrum", spec.spectrum)
    return "\n".join(lines) + "\n"


def load_spec(path) -> ExperimentSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_spec(fh.read())


def spec_to_dict(spec: ExperimentSpec) -> dict:
    return asdict(spec)


# --- bundled presets -------------------------------------------------------

def _preset_dir():
    return importlib.resources.files("llhyst") / "presets"


def preset_names() -> list[str]:
    return sorted(p.name[:-5] for p in _preset_dir().iterdir()
                  if p.name.endswith(".toml"))


def preset_text(name: str) -> str:
    res = _preset_dir() / f"{name}.toml"
    try:
        return res.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise SpecError(f"unknown preset '{name}' "
                        f"(available: {', '.join(preset_names())})") from None


def load_preset(name: str) -> ExperimentSpec:
    return parse_spec(preset_text(name))
