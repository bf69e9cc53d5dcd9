"""Command-line experiment runner.

Subcommands::

    llhyst simulate <spec|preset>   one driven run -> trajectory CSV (t,u,y)
    llhyst sweep <spec|preset>      frequency sweep -> loop metrics CSV + verdict
    llhyst spectrum <spec|preset>   analytic vs discretized eigenvalues -> CSV
    llhyst verify                   run the built-in oracle suite
    llhyst preset list|show <name>  bundled reproduction recipes

Exit codes: 0 success, 1 verification failure, 2 invalid spec,
3 runtime simulation failure.  CSV numbers use the shortest round-trip
decimal representation, so byte-identical inputs give byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict
from pathlib import Path

import numpy as np

import llhyst
from llhyst import hysteresis, lllin, verify
from llhyst.core import BlowUpError, ConstraintError, SpatialGrid, StabilityError
from llhyst.hysteresis import SweepError
from llhyst.llpde import LLParams
from llhyst.lllin import LinearizationPoint
from llhyst.specio import (
    ExperimentSpec,
    SpecError,
    expand_spec,
    load_preset,
    load_spec,
    preset_names,
    preset_text,
    spec_to_dict,
)
from llhyst.svgplot import write_line_svg
from llhyst.systems import make_runner

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_SPEC_ERROR = 2
EXIT_RUNTIME_ERROR = 3


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _write_csv(path: Path, header: str, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _resolve_spec(ref: str) -> ExperimentSpec:
    """A spec reference is a preset name or a path to a TOML file."""
    if ref in preset_names():
        return load_preset(ref)
    path = Path(ref)
    if path.exists():
        return load_spec(path)
    raise SpecError(f"'{ref}' is neither a preset nor an existing spec file")


def _apply_overrides(spec: ExperimentSpec, args) -> ExperimentSpec:
    integrator = dict(spec.integrator)
    if getattr(args, "dt", None) is not None:
        integrator["dt"] = args.dt
    if getattr(args, "discard_periods", None) is not None:
        integrator["discard_periods"] = args.discard_periods
    spec.integrator = integrator
    return spec


def _runner_from_spec(spec: ExperimentSpec):
    integ = spec.integrator
    return make_runner(
        spec.system,
        config={"params": spec.params, "input": spec.input,
                "initial": spec.initial, "probe": spec.probe},
        dt=integ.get("dt"),
        project=integ.get("project"),
        samples_per_period=int(integ.get("samples_per_period", 2000)),
    )


def _stem(spec: ExperimentSpec, fallback: str) -> str:
    return spec.name or fallback


def _write_record(outdir: Path, stem: str, spec: ExperimentSpec,
                  payload: dict, started: float) -> Path:
    record = {
        "toolkit_version": llhyst.__version__,
        "spec": spec_to_dict(spec),
        "wall_clock_s": round(time.time() - started, 3),
    }
    record.update(payload)
    path = outdir / f"{stem}_run.json"
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(record, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")
    return path


def run_simulate(spec: ExperimentSpec, outdir: Path, stem: str = "run") -> Path:
    """Single-frequency run; writes ``<stem>_trajectory.csv`` (t,u,y)."""
    started = time.time()
    spec = expand_spec(spec)
    omega = spec.single_omega()
    runner = _runner_from_spec(spec)
    n_periods = int(spec.integrator["discard_periods"]) + 1
    traj = runner(omega, n_periods)
    stem = _stem(spec, stem)
    path = outdir / f"{stem}_trajectory.csv"
    _write_csv(path, "t,u,y", zip(traj.times, traj.inputs, traj.samples))
    diagnostics = {
        "omega": omega,
        "dt": traj.meta.get("dt"),
        "n_steps": traj.meta.get("n_steps"),
        "record_stride": traj.meta.get("record_stride"),
        "samples": len(traj),
    }
    for key in ("probe_node", "probe_x", "probe_channel", "projected", "form"):
        if key in traj.meta:
            diagnostics[key] = traj.meta[key]
    if "drift_report" in traj.meta:
        diagnostics["drift_report"] = asdict(traj.meta["drift_report"])
    _write_record(outdir, stem, spec, {"diagnostics": diagnostics}, started)
    return path


def run_sweep(spec: ExperimentSpec, outdir: Path, stem: str = "sweep",
              plot: bool = False, jobs: int = 1,
              out=print) -> tuple[Path, hysteresis.SweepResult]:
    """Frequency sweep; writes loop metrics CSV and prints the verdict."""
    started = time.time()
    spec = expand_spec(spec)
    if len(spec.sweep) < 3:
        raise SpecError("sweep specs need at least 3 frequencies in [sweep].omegas")
    runner = _runner_from_spec(spec)
    result = hysteresis.sweep(
        runner, spec.sweep,
        discard_periods=int(spec.integrator["discard_periods"]),
        jobs=jobs,
    )
    stem = _stem(spec, stem)
    path = outdir / f"{stem}_loops.csv"
    rows = [(om, m.area, m.normalized_area, m.width, m.height, m.closure_gap)
            for om, m in result.entries]
    _write_csv(path, "omega,area,normalized_area,width,height,closure_gap", rows)
    out(f"verdict: {result.verdict}")
    plots = []
    if plot or spec.outputs.get("plot"):
        for (om, _), curve in zip(result.entries, result.curves):
            svg = outdir / f"{stem}_loop_omega{_fmt(om)}.svg"
            write_line_svg(svg, [(curve.u, curve.y, f"omega={om:g}")],
                           title=f"{spec.system}: input-output loop at "
                                 f"omega={om:g}",
                           xlabel="u", ylabel="y")
            plots.append(str(svg))
    payload = {
        "verdict": result.verdict,
        "loops": [dict(omega=om, **asdict(m)) for om, m in result.entries],
        "plots": plots,
    }
    _write_record(outdir, stem, spec, payload, started)
    return path, result


def run_spectrum(spec: ExperimentSpec, outdir: Path, stem: str = "spectrum") -> Path:
    """Analytic vs discretized eigenvalues for the linearized dynamics."""
    started = time.time()
    spec = expand_spec(spec)
    if spec.system != "ll-linear":
        raise SpecError("spectrum requires system = 'll-linear'")
    if spec.spectrum is None:
        spec.spectrum = {"max_mode": 5}
    max_mode = int(spec.spectrum["max_mode"])
    p = LLParams(float(spec.params["nu"]),
                 SpatialGrid(float(spec.params["L"]), int(spec.params["n"])))
    at = LinearizationPoint(np.asarray(spec.params.get("a", [1.0, 0.0, 0.0]),
                                       dtype=float))
    ev = lllin.numeric_spectrum(lllin.discretize_A(p, at))
    matches = lllin.match_spectrum(lllin.analytic_spectrum(p, max_mode), ev)
    stem = _stem(spec, stem)
    path = outdir / f"{stem}_spectrum.csv"
    rows = [(m.mode, m.analytic.real, m.analytic.imag,
             m.numeric.real, m.numeric.imag, m.abs_error) for m in matches]
    _write_csv(path, "mode,re_analytic,im_analytic,re_numeric,im_numeric,abs_error",
               rows)
    payload = {
        "max_mode": max_mode,
        "max_real_part": float(ev.real.max()),
        "kernel_dimension": int((np.abs(ev) < 1e-10).sum()),
    }
    _write_record(outdir, stem, spec, payload, started)
    return path


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="llhyst",
        description="Landau-Lifshitz dynamics and hysteresis-loop experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--dt", type=float, default=None,
                       help="override the step-size policy")
        p.add_argument("--discard-periods", type=int, default=None,
                       help="transient periods to discard before loop analysis")

    p_sim = sub.add_parser("simulate", help="run one experiment, write t,u,y CSV")
    p_sim.add_argument("spec", help="preset name or spec file")
    add_common(p_sim)

    p_sweep = sub.add_parser("sweep", help="frequency sweep with loop verdict")
    p_sweep.add_argument("spec", help="preset name or spec file")
    add_common(p_sweep)
    p_sweep.add_argument("--plot", action="store_true",
                         help="write an SVG loop plot per frequency")
    p_sweep.add_argument("--jobs", type=int, default=1,
                         help="parallel sweep points")

    p_spec = sub.add_parser("spectrum", help="analytic vs discrete eigenvalues")
    p_spec.add_argument("spec", help="preset name or spec file")
    p_spec.add_argument("--out", default=".", help="output directory")

    sub.add_parser("verify", help="run the oracle suite")

    p_preset = sub.add_parser("preset", help="list or show bundled presets")
    preset_sub = p_preset.add_subparsers(dest="preset_command", required=True)
    preset_sub.add_parser("list", help="list preset names")
    p_show = preset_sub.add_parser("show", help="print a preset document")
    p_show.add_argument("name")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return EXIT_OK if verify.run_verify() else EXIT_VERIFY_FAILED

        if args.command == "preset":
            if args.preset_command == "list":
                for name in preset_names():
                    print(name)
            else:
                print(preset_text(args.name), end="")
            return EXIT_OK

        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        spec = _apply_overrides(_resolve_spec(args.spec), args)
        stem = Path(args.spec).stem

        if args.command == "simulate":
            path = run_simulate(spec, outdir, stem)
            print(f"wrote {path}")
        elif args.command == "sweep":
            path, _ = run_sweep(spec, outdir, stem, plot=args.plot,
                                jobs=args.jobs)
            print(f"wrote {path}")
        elif args.command == "spectrum":
            path = run_spectrum(spec, outdir, stem)
            print(f"wrote {path}")
        return EXIT_OK
    except SpecError as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return EXIT_SPEC_ERROR
    except SweepError as exc:
        print(f"simulation error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME_ERROR
    except (StabilityError, BlowUpError, ConstraintError) as exc:
        print(f"simulation error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_RUNTIME_ERROR


if __name__ == "__main__":
    sys.exit(main())
