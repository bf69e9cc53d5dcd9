"""Built-in oracle suite: every cross-checkable piece of the toolkit.

Each check pits an implementation against an independent reference (closed
form, analytic spectrum, exact identity, refinement ladder) and returns a
pass/fail verdict with a measured number.  ``llhyst verify`` prints the
table and exits nonzero when anything fails.
"""

from __future__ import annotations

import numpy as np

from llhyst import hysteresis, lllin, llpde, odebench
from llhyst.core import (
    HarmonicInput,
    MagnetizationField,
    SpatialGrid,
    StabilityError,
    cross,
)
from llhyst.llpde import LLParams
from llhyst.lllin import LinearizationPoint
from llhyst.odebench import SecondOrderParams, SecondOrderState


def _check_cross_identities():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(50):
        a = rng.normal(size=3)
        b = rng.normal(size=3)
        c = cross(a, b)
        scale = np.linalg.norm(a) * np.linalg.norm(b)
        worst = max(worst,
                    abs(float(c @ a)) / scale,
                    abs(float(c @ b)) / scale,
                    float(np.abs(c + cross(b, a)).max()) / scale)
    return worst <= 1e-15, f"max identity residual {worst:.2e} (tol 1e-15)"


def _ode_error(k: float, omega: float, dt=None) -> float:
    params = SecondOrderParams(15.0, k)
    inp = HarmonicInput(1.0, omega, "sine")
    traj = odebench.integrate(params, inp, SecondOrderState(0.0, 0.0),
                              3 * inp.period, dt=dt)
    if k == 0.0:
        ref = odebench.closed_form_k0(15.0, omega, 0.0, 0.0, traj.times)
    else:
        ref = odebench.closed_form_linear(15.0, k, omega, 0.0, 0.0, traj.times)
    return float(np.abs(traj.samples - ref).max())


def _check_closed_form_linear():
    err = _ode_error(1.0, 1.0)
    return err <= 1e-6, f"max |rk4 - closed form| = {err:.2e} (tol 1e-6)"


def _check_closed_form_k0():
    err = _ode_error(0.0, 1.0)
    return err <= 1e-6, f"max |rk4 - closed form| = {err:.2e} (tol 1e-6)"


def _check_ode_convergence():
    params = SecondOrderParams(15.0, 1.0)
    dt0 = odebench.default_dt(params, 0.1)
    e1 = _ode_error(1.0, 0.1, dt=dt0)
    e2 = _ode_error(1.0, 0.1, dt=dt0 / 2)
    ratio = e1 / e2
    return 8.0 <= ratio <= 32.0, f"error ratio on dt halving = {ratio:.1f} (want [8, 32])"


def _check_field_equilibria():
    grid = SpatialGrid(1.0, 41)
    p = LLParams(0.02, grid)
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(5):
        a = rng.normal(size=3)
        a /= np.linalg.norm(a)
        f = MagnetizationField.constant(grid, a)
        worst = max(worst, float(np.abs(llpde.ll_rhs(f, p).values).max()))
        worst = max(worst, float(np.abs(
            lllin.apply_A(f, p, LinearizationPoint(np.array([1.0, 0, 0]))).values).max()))
    return worst == 0.0, f"max |rhs| over constant unit fields = {worst:.1e} (want exact 0)"


def _check_semilinear_refinement():
    res = {}
    for n in (21, 41, 81):
        grid = SpatialGrid(1.0, n)
        f = llpde.great_circle_field(grid, {1: 1.2})
        res[n] = llpde.semilinear_residual(f, LLParams(0.02, grid))
    r1 = res[21] / res[41]
    r2 = res[41] / res[81]
    ok = 3.2 <= r1 <= 5.0 and 3.2 <= r2 <= 5.0
    return ok, f"residual ratios {r1:.2f}, {r2:.2f} per grid doubling (want [3.2, 5])"


def _spectrum_errors(n: int, max_mode: int = 5):
    p = LLParams(0.02, SpatialGrid(1.0, n))
    at = LinearizationPoint(np.array([1.0, 0.0, 0.0]))
    ev = lllin.numeric_spectrum(lllin.discretize_A(p, at))
    matches = lllin.mode_errors(
        lllin.match_spectrum(lllin.analytic_spectrum(p, max_mode), ev))
    return ev, matches


def _check_spectrum():
    ev, matches = _spectrum_errors(41)
    kernel_dim = int((np.abs(ev) < 1e-10).sum())
    max_re = float(ev.real.max())
    scaled = max(err / m**4 for m, err in matches.items() if m >= 1)
    ok = kernel_dim == 3 and max_re <= 1e-10 and scaled <= 1e-2
    return ok, (f"kernel dim {kernel_dim} (want 3), max Re {max_re:.1e} "
                f"(tol 1e-10), mode-scaled error {scaled:.2e} (tol 1e-2)")


def _check_spectrum_convergence():
    _, m41 = _spectrum_errors(41)
    _, m81 = _spectrum_errors(81)
    ratios = [m41[m] / m81[m] for m in range(1, 6)]
    ok = all(3.2 <= r <= 5.0 for r in ratios)
    return ok, ("eigenvalue error ratios n=41 -> 81: "
                + ", ".join(f"{r:.2f}" for r in ratios) + " (want [3.2, 5])")


def _check_loop_area_ellipse():
    theta = np.linspace(0.0, 2 * np.pi, 1001)[:-1]
    A, B = 0.4, 0.25
    curve = hysteresis.IOCurve(np.sin(theta),
                               A * np.sin(theta) + B * np.cos(theta), 1.0)
    area = abs(hysteresis.loop_area(curve))
    rel = abs(area - np.pi * B) / (np.pi * B)
    return rel <= 1e-3, f"ellipse area relative error {rel:.2e} (tol 1e-3)"


def _check_census():
    expected = {
        "linear-spring": ("one", False),
        "nonlinear-spring": ("finite-many", True),
        "integrator-chain": ("continuum", True),
        "ll-nonlinear": ("continuum", True),
        "ll-linear": ("continuum", True),
    }
    for name, (count, multi) in expected.items():
        census = hysteresis.equilibrium_census(name)
        if census.count != count or census.multiple_stable != multi:
            return False, (f"{name}: got ({census.count}, "
                           f"multiple_stable={census.multiple_stable}), "
                           f"want ({count}, {multi})")
    return True, "all five systems classified as expected"


def _check_stability_guard():
    grid = SpatialGrid(1.0, 41)
    p = LLParams(0.02, grid)
    f0 = MagnetizationField.constant(grid, [1.0, 0.0, 0.0])
    try:
        llpde.integrate_ll(f0, p, None, 1.0, dt=2.0 * p.stability_dt())
    except StabilityError as exc:
        return True, f"guard fired: {exc}"
    return False, "oversized dt was accepted"


CHECKS = [
    ("cross-product identities", _check_cross_identities),
    ("closed form vs rk4 (linear)", _check_closed_form_linear),
    ("closed form vs rk4 (k=0)", _check_closed_form_k0),
    ("rk4 order-4 convergence", _check_ode_convergence),
    ("constant fields are exact equilibria", _check_field_equilibria),
    ("semilinear residual refinement", _check_semilinear_refinement),
    ("discrete spectrum vs analytic", _check_spectrum),
    ("spectral convergence under refinement", _check_spectrum_convergence),
    ("loop area on analytic ellipse", _check_loop_area_ellipse),
    ("equilibrium census", _check_census),
    ("step-size guard", _check_stability_guard),
]


def run_verify(out=print) -> bool:
    """Run every check; report a table; True iff all pass."""
    all_ok = True
    width = max(len(name) for name, _ in CHECKS)
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        all_ok &= ok
        out(f"{'PASS' if ok else 'FAIL'}  {name:<{width}}  {detail}")
    out(f"{'all checks passed' if all_ok else 'VERIFICATION FAILED'}")
    return all_ok
