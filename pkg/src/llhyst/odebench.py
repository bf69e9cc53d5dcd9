"""Damped second-order benchmark oscillators.

Three variants of ``y'' + c y' + restoring(y) = u(t)`` serve as reference
systems for the hysteresis classifier:

* linear restoring ``k*y`` with k != 0: a single stable equilibrium,
* linear with k = 0 (a damped integrator chain): a continuum of equilibria,
* cubic restoring ``k*(y - y^3)``: for k < 0 a bistable double well.

The linear variants have closed-form responses to ``sin(omega*t)`` forcing,
used throughout the test suite as independent oracles for the fixed-step
RK4 integrator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from llhyst import _kernels
from llhyst.core import (
    BlowUpError,
    HarmonicInput,
    StabilityError,
    Trajectory,
    evaluate_input,
    plan_steps,
)

#: Steps-per-period floor for harmonic forcing.
MIN_STEPS_PER_PERIOD = 200

#: Accuracy cap for the default step size (keeps the RK4 error ladder well
#: above round-off so convergence studies stay clean).
DT_CAP = 0.04


@dataclass(frozen=True)
class SecondOrderParams:
    """Damping c, stiffness k, and the choice of restoring term.

    ``cubic=False`` gives the linear term ``k*y``; ``cubic=True`` gives
    ``k*(y - y**3)``.
    """

    c: float
    k: float
    cubic: bool = False

    def __post_init__(self):
        if not (np.isfinite(self.c) and np.isfinite(self.k)):
            raise ValueError("c and k must be finite")


@dataclass(frozen=True)
class SecondOrderState:
    y: float
    ydot: float

    def __post_init__(self):
        if not (np.isfinite(self.y) and np.isfinite(self.ydot)):
            raise ValueError("state must be finite")

    def norm(self) -> float:
        return float(np.hypot(self.y, self.ydot))


def rhs(params: SecondOrderParams, s: SecondOrderState, u: float = 0.0) -> SecondOrderState:
    """First-order form right-hand side (dy/dt, dydot/dt) at state ``s``."""
    if not np.isfinite(u):
        raise ValueError("input u must be finite")
    restoring = params.k * (s.y - s.y**3) if params.cubic else params.k * s.y
    return SecondOrderState(s.ydot, -params.c * s.ydot - restoring + u)


def _effective_stiffness(params: SecondOrderParams, y: float) -> float:
    if params.cubic:
        return params.k * (1.0 - 3.0 * y * y)
    return params.k


def stability_dt(params: SecondOrderParams, at_y: float = 0.0) -> float:
    """Step-size bound from the linearized eigenvalues (safety factor 2)."""
    k_eff = _effective_stiffness(params, at_y)
    lams = np.roots([1.0, params.c, k_eff])
    rho = float(np.abs(lams).max())
    if rho == 0.0:
        return DT_CAP
    return 0.5 * 2.78 / rho


def default_dt(params: SecondOrderParams, omega: float | None = None) -> float:
    """Default step size: accuracy cap, stability bound, and for harmonic
    forcing at least 1000 steps per period."""
    dt = min(DT_CAP, stability_dt(params))
    if params.cubic:
        # The fast eigenvalue is largest at the outer equilibria.
        dt = min(dt, stability_dt(params, at_y=1.0))
    if omega is not None:
        dt = min(dt, (2.0 * np.pi / omega) / 1000.0)
    return dt


def integrate(params: SecondOrderParams, inp: HarmonicInput | None,
              s0: SecondOrderState, t_end: float, dt: float | None = None,
              samples_per_period: int = 2000) -> Trajectory:
    """Fixed-step RK4 from ``s0`` over [0, t_end], probing the position y.

    ``dt`` is an upper bound on the actual step: the step count is chosen so
    the recorded grid covers t_end exactly and, for harmonic input, so whole
    periods land on recorded samples.  Harmonic runs must resolve each
    period with at least ``MIN_STEPS_PER_PERIOD`` steps.  Raises
    :class:`BlowUpError` with the first bad time if the state leaves the
    finite range.
    """
    dt_max = default_dt(params, inp.omega if inp else None) if dt is None else float(dt)
    if dt_max <= 0:
        raise StabilityError("dt must be positive")
    period = None
    if inp is not None:
        period = inp.period
        if dt_max > period / MIN_STEPS_PER_PERIOD:
            raise StabilityError(
                f"dt={dt_max:g} resolves fewer than {MIN_STEPS_PER_PERIOD} "
                f"steps per period {period:g}"
            )
    n_steps, dt_act, stride = plan_steps(t_end, dt_max, samples_per_period, period)

    n_rec = n_steps // stride + 1
    y_rec = np.empty(n_rec)
    v_rec = np.empty(n_rec)
    amp = inp.amplitude if inp else 0.0
    omega = inp.omega if inp else 1.0
    cos_shape = bool(inp and inp.shape == "cosine")
    bad = _kernels.ode_rk4(params.c, params.k, params.cubic, s0.y, s0.ydot,
                           amp, omega, cos_shape, 0.0, dt_act, n_steps,
                           stride, y_rec, v_rec)
    times = (np.arange(n_rec) * stride) * dt_act
    if bad >= 0:
        raise BlowUpError(float(times[bad]))
    inputs = evaluate_input(inp, times) if inp else np.zeros(n_rec)
    meta = {
        "dt": dt_act,
        "n_steps": n_steps,
        "record_stride": stride,
        "final_state": SecondOrderState(float(y_rec[-1]), float(v_rec[-1])),
        "velocities": v_rec,
    }
    if period is not None:
        meta["records_per_period"] = int(round(period / (stride * dt_act)))
    return Trajectory(times, y_rec, np.asarray(inputs), meta)


def closed_form_linear(c: float, k: float, omega: float, y0: float, y1: float, t):
    """Exact response of the linear oscillator to ``sin(omega*t)`` forcing.

    Modal decomposition: the homogeneous part is fitted to the initial data
    through the eigenvalues of the characteristic polynomial, and the
    particular part is::

        ((k - w^2) sin(wt) - c w cos(wt)) / ((k - w^2)^2 + c^2 w^2)

    Requires distinct eigenvalues (c^2 != 4k) and omega > 0.
    """
    if not omega > 0:
        raise ValueError("omega must be positive")
    disc = c * c - 4.0 * k
    if disc == 0.0:
        raise ValueError("repeated eigenvalues (c^2 == 4k) are not supported")
    root = np.sqrt(complex(disc))
    lam1 = (-c + root) / 2.0
    lam2 = (-c - root) / 2.0
    denom = (k - omega**2) ** 2 + (c * omega) ** 2
    yp0 = -c * omega / denom
    vp0 = omega * (k - omega**2) / denom
    r0 = y0 - yp0
    r1 = y1 - vp0
    A = (r1 - lam2 * r0) / (lam1 - lam2)
    B = r0 - A
    t_arr = np.asarray(t, dtype=float)
    hom = (A * np.exp(lam1 * t_arr) + B * np.exp(lam2 * t_arr)).real
    part = ((k - omega**2) * np.sin(omega * t_arr)
            - c * omega * np.cos(omega * t_arr)) / denom
    out = hom + part
    return float(out) if out.ndim == 0 else out


def closed_form_k0(c: float, omega: float, y0: float, y1: float, t):
    """Exact response of the k = 0 system (damped integrator chain).

    As omega -> 0 and t -> infinity this tends to ``y0 + y1/c``: the
    steady state remembers the initial data, the signature of the
    equilibrium continuum.
    """
    if not c > 0:
        raise ValueError("c must be positive")
    if not omega > 0:
        raise ValueError("omega must be positive")
    t_arr = np.asarray(t, dtype=float)
    w2c2 = omega**2 + c**2
    out = (y0 + y1 / c * (1.0 - np.exp(-c * t_arr))
           - np.sin(omega * t_arr) / w2c2
           + (w2c2 - c**2 * np.cos(omega * t_arr)
              - omega**2 * np.exp(-c * t_arr)) / (omega * c * w2c2))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class EquilibriumSet:
    """Equilibria of the unforced system.

    ``kind`` is ``'single'``, ``'finite'`` or ``'continuum'``; ``points``
    lists representative states ((a, 0) for any a in the continuum case).
    """

    kind: str
    points: tuple[SecondOrderState, ...]
    description: str


def equilibria(params: SecondOrderParams) -> EquilibriumSet:
    """Enumerate the unforced equilibria of the system."""
    if params.k == 0.0:
        return EquilibriumSet(
            "continuum",
            (SecondOrderState(0.0, 0.0),),
            "all states (a, 0) for real a",
        )
    if params.cubic:
        pts = (SecondOrderState(0.0, 0.0), SecondOrderState(1.0, 0.0),
               SecondOrderState(-1.0, 0.0))
        return EquilibriumSet("finite", pts, "roots of y - y^3 with zero velocity")
    return EquilibriumSet("single", (SecondOrderState(0.0, 0.0),),
                          "origin only")


def linearized_eigenvalues(params: SecondOrderParams,
                           at: SecondOrderState) -> tuple[complex, complex]:
    """Eigenvalues of the linearization about an equilibrium ``at``.

    Roots of ``lam^2 + c lam + k_eff = 0`` with the effective stiffness
    ``k*(1 - 3 y^2)`` in the cubic case.  Raises if ``at`` is not an
    equilibrium.
    """
    deriv = rhs(params, at, 0.0)
    if abs(deriv.y) > 1e-12 or abs(deriv.ydot) > 1e-12:
        raise ValueError(f"state ({at.y}, {at.ydot}) is not an equilibrium")
    k_eff = _effective_stiffness(params, at.y)
    disc = np.sqrt(complex(params.c**2 - 4.0 * k_eff))
    return ((-params.c + disc) / 2.0, (-params.c - disc) / 2.0)
