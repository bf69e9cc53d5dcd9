"""Built-in experiment systems and their standard configurations.

Each system is exposed as a runner closure ``runner(omega, n_periods) ->
Trajectory``, suitable for :func:`llhyst.hysteresis.sweep`.  The standard
parameter sets are the ones used by the bundled reproduction presets:

================  =====================================================
linear-spring     y'' + 15 y' + y = sin(omega t), from rest
nonlinear-spring  y'' + 15 y' - (y - y^3) = sin(omega t), from rest
integrator-chain  y'' + 15 y' = sin(omega t), from rest
ll-nonlinear      Landau-Lifshitz field, nu=0.02, L=1, n=41, from the
                  saturated state (1,0,0), driven by
                  (0.001 cos(omega t), 0, 0), probing m1 at x=0.6
ll-linear         the linearization about a=(1,0,0) with the same drive,
                  from the constant field (1,0,0), probing z1 at x=0.6
================  =====================================================

The forced field runs integrate the driven equation as written (projection
off); see :mod:`llhyst.llpde` for why a projected run from the saturated
state cannot respond to a parallel drive at all.
"""

from __future__ import annotations

import numpy as np

from llhyst import lllin, llpde, odebench
from llhyst.core import HarmonicInput, MagnetizationField, SpatialGrid, Trajectory
from llhyst.llpde import LLParams, ProbeSpec
from llhyst.lllin import LinearizationPoint
from llhyst.odebench import SecondOrderParams, SecondOrderState

SYSTEM_NAMES = (
    "linear-spring",
    "nonlinear-spring",
    "integrator-chain",
    "ll-nonlinear",
    "ll-linear",
)

ODE_SYSTEMS = SYSTEM_NAMES[:3]
FIELD_SYSTEMS = SYSTEM_NAMES[3:]


def default_config(system: str) -> dict:
    """Fully explicit standard configuration block for a built-in system."""
    if system == "linear-spring":
        params = {"c": 15.0, "k": 1.0}
    elif system == "nonlinear-spring":
        params = {"c": 15.0, "k": -1.0}
    elif system == "integrator-chain":
        params = {"c": 15.0, "k": 0.0}
    elif system in FIELD_SYSTEMS:
        params = {"nu": 0.02, "L": 1.0, "n": 41}
        if system == "ll-linear":
            params["a"] = [1.0, 0.0, 0.0]
    else:
        raise ValueError(f"unknown system '{system}'")

    cfg = {"system": system, "params": params}
    if system in ODE_SYSTEMS:
        cfg["input"] = {"amplitude": 1.0, "shape": "sine"}
        cfg["initial"] = {"y": 0.0, "ydot": 0.0}
    else:
        cfg["input"] = {"amplitude": 0.001, "shape": "cosine", "channel": 1}
        key = "m0" if system == "ll-nonlinear" else "z0"
        cfg["initial"] = {key: [1.0, 0.0, 0.0]}
        cfg["probe"] = {"x": 0.6, "channel": 1}
    return cfg


def _ode_params(system: str, params: dict) -> SecondOrderParams:
    return SecondOrderParams(
        float(params["c"]), float(params["k"]),
        cubic=(system == "nonlinear-spring"),
    )


def _ll_params(params: dict) -> LLParams:
    return LLParams(float(params["nu"]),
                    SpatialGrid(float(params["L"]), int(params["n"])))


def make_runner(system: str, config: dict | None = None,
                dt: float | None = None, project: bool | None = None,
                samples_per_period: int = 2000):
    """Build ``runner(omega, n_periods) -> Trajectory`` for a built-in system.

    ``config`` follows the shape of :func:`default_config`; missing blocks
    fall back to the standard configuration.  ``dt`` overrides the default
    step-size policy.  ``project`` overrides the constraint handling of the
    nonlinear field system (default: off for forced runs).
    """
    base = default_config(system)
    cfg = dict(base)
    if config:
        for key in ("params", "input", "initial", "probe"):
            if config.get(key):
                merged = dict(base.get(key, {}))
                merged.update(config[key])
                cfg[key] = merged

    inp_cfg = cfg["input"]

    if system in ODE_SYSTEMS:
        params = _ode_params(system, cfg["params"])
        s0 = SecondOrderState(float(cfg["initial"].get("y", 0.0)),
                              float(cfg["initial"].get("ydot", 0.0)))

        def runner(omega: float, n_periods: int = 3) -> Trajectory:
            inp = HarmonicInput(float(inp_cfg["amplitude"]), omega,
                                inp_cfg.get("shape", "sine"))
            t_end = n_periods * inp.period
            return odebench.integrate(params, inp, s0, t_end, dt=dt,
                                      samples_per_period=samples_per_period)

        return runner

    params = _ll_params(cfg["params"])
    probe_cfg = cfg.get("probe") or {"x": 0.6, "channel": 1}
    probe = ProbeSpec(float(probe_cfg["x"]), int(probe_cfg["channel"]))
    channel = int(inp_cfg.get("channel", 1))

    if system == "ll-nonlinear":
        m0 = MagnetizationField.constant(
            params.grid, cfg["initial"].get("m0", [1.0, 0.0, 0.0]))
        do_project = False if project is None else project

        def runner(omega: float, n_periods: int = 3) -> Trajectory:
            inp = HarmonicInput(float(inp_cfg["amplitude"]), omega,
                                inp_cfg.get("shape", "cosine"), channel)
            t_end = n_periods * inp.period
            traj, report = llpde.integrate_ll(
                m0, params, inp, t_end, dt=dt, probe=probe,
                project=do_project, samples_per_period=samples_per_period)
            traj.meta["drift_report"] = report
            return traj

        return runner

    # ll-linear
    at = LinearizationPoint(np.asarray(cfg["params"].get("a", [1.0, 0.0, 0.0]),
                                       dtype=float))
    z0 = MagnetizationField.constant(
        params.grid, cfg["initial"].get("z0", [1.0, 0.0, 0.0]))

    def runner(omega: float, n_periods: int = 3) -> Trajectory:
        inp = HarmonicInput(float(inp_cfg["amplitude"]), omega,
                            inp_cfg.get("shape", "cosine"), channel)
        t_end = n_periods * inp.period
        return lllin.integrate_linear(z0, params, at, inp, t_end, dt=dt,
                                      probe=probe,
                                      samples_per_period=samples_per_period)

    return runner
