"""Landau-Lifshitz dynamics linearized about a constant unit equilibrium.

About any unit vector ``a`` the perturbation z obeys ``z' = A z`` with
``A z = nu*z_xx + a x z_xx`` under the same zero-slope boundary conditions.
Separating variables with the Neumann cosine modes gives the spectrum in
closed form: per spatial mode m >= 1 the three eigenvalues

    -m^2 pi^2 nu / L^2   and   -m^2 pi^2 nu / L^2  +/-  i m^2 pi^2 / L^2,

and mode 0 contributes the eigenvalue 0 (three constant kernel directions
in the discretization).  The module provides the operator, its dense nodal
matrix, the analytic spectrum, a matcher for verifying the discretization's
eigenvalues, and RK4 time integration of the forced linear dynamics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from llhyst import _kernels
from llhyst.core import (
    BlowUpError,
    HarmonicInput,
    MagnetizationField,
    StabilityError,
    Trajectory,
    as_vec3,
    evaluate_input,
    plan_steps,
)
from llhyst.llpde import LLParams, ProbeSpec, SAMPLES_PER_PERIOD, _lap, default_dt


@dataclass(frozen=True)
class LinearizationPoint:
    """Constant unit equilibrium the dynamics are linearized about."""

    a: np.ndarray

    def __post_init__(self):
        a = as_vec3(self.a, "a")
        if abs(np.linalg.norm(a) - 1.0) > 1e-12:
            raise ValueError("linearization point must be a unit vector")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "a", a)


@dataclass(frozen=True)
class SpectrumEntry:
    """Eigenvalues attached to spatial mode m (eigenfunction cos(m pi x/L)).

    ``values`` holds one eigenvalue for mode 0 and the triple (real family,
    complex pair) for m >= 1.
    """

    mode: int
    values: tuple[complex, ...]


def apply_A(z: MagnetizationField, p: LLParams,
            at: LinearizationPoint) -> MagnetizationField:
    """Apply the linearized operator nu*z_xx + a x z_xx nodewise."""
    zxx = _lap(z.values, p.grid.h)
    a = at.a
    out = p.nu * zxx
    out[:, 0] += a[1] * zxx[:, 2] - a[2] * zxx[:, 1]
    out[:, 1] += a[2] * zxx[:, 0] - a[0] * zxx[:, 2]
    out[:, 2] += a[0] * zxx[:, 1] - a[1] * zxx[:, 0]
    return MagnetizationField(p.grid, out)


def analytic_spectrum(p: LLParams, max_mode: int) -> list[SpectrumEntry]:
    """Exact eigenvalue families for modes 0..max_mode."""
    if max_mode < 0:
        raise ValueError("max_mode must be nonnegative")
    entries = [SpectrumEntry(0, (0.0 + 0.0j,))]
    L = p.grid.length
    for m in range(1, max_mode + 1):
        mu = (m * np.pi / L) ** 2
        lam_real = complex(-mu * p.nu, 0.0)
        lam_plus = complex(-mu * p.nu, mu)
        lam_minus = complex(-mu * p.nu, -mu)
        entries.append(SpectrumEntry(m, (lam_real, lam_plus, lam_minus)))
    return entries


def cross_matrix(a) -> np.ndarray:
    """3x3 matrix [a]_x with [a]_x v = a x v."""
    a = as_vec3(a, "a")
    return np.array([
        [0.0, -a[2], a[1]],
        [a[2], 0.0, -a[0]],
        [-a[1], a[0], 0.0],
    ])


def laplacian_matrix(grid) -> np.ndarray:
    """Dense n x n mirror-ghost Neumann second-difference matrix."""
    n = grid.n
    ih2 = 1.0 / (grid.h * grid.h)
    K = np.zeros((n, n))
    for j in range(1, n - 1):
        K[j, j - 1] = ih2
        K[j, j] = -2.0 * ih2
        K[j, j + 1] = ih2
    K[0, 0] = -2.0 * ih2
    K[0, 1] = 2.0 * ih2
    K[-1, -1] = -2.0 * ih2
    K[-1, -2] = 2.0 * ih2
    return K


def discretize_A(p: LLParams, at: LinearizationPoint) -> np.ndarray:
    """Dense 3n x 3n nodal matrix M with M vec(z) = vec(apply_A(z)).

    Fields are flattened row-major (node-major), so M is the Kronecker
    product of the Neumann Laplacian with ``nu*I + [a]_x``.
    """
    B = p.nu * np.eye(3) + cross_matrix(at.a)
    return np.kron(laplacian_matrix(p.grid), B)


def numeric_spectrum(M: np.ndarray) -> np.ndarray:
    """All eigenvalues of the dense matrix, sorted by real part descending,
    then by imaginary part."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("M must be square")
    try:
        ev = np.linalg.eigvals(M)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"eigensolver failed to converge: {exc}") from exc
    order = np.lexsort((ev.imag, -ev.real))
    return ev[order]


@dataclass(frozen=True)
class SpectrumMatch:
    """One analytic eigenvalue paired with its nearest numeric partner."""

    mode: int
    analytic: complex
    numeric: complex

    @property
    def abs_error(self) -> float:
        return abs(self.analytic - self.numeric)


def match_spectrum(entries: list[SpectrumEntry],
                   eigvals: np.ndarray) -> list[SpectrumMatch]:
    """Greedy nearest-neighbour pairing of analytic and numeric eigenvalues.

    Analytic values are visited in order of increasing magnitude (mode 0
    counted with its discrete multiplicity of three) and each claims the
    nearest unclaimed numeric eigenvalue.  Complex-conjugate pairs are
    thereby matched without any ordering convention.
    """
    targets: list[tuple[int, complex]] = []
    for e in entries:
        vals = e.values * 3 if e.mode == 0 else e.values
        targets.extend((e.mode, v) for v in vals)
    targets.sort(key=lambda t: abs(t[1]))
    ev = np.asarray(eigvals, dtype=complex)
    used = np.zeros(len(ev), dtype=bool)
    matches = []
    for mode, lam in targets:
        d = np.abs(ev - lam)
        d[used] = np.inf
        j = int(np.argmin(d))
        used[j] = True
        matches.append(SpectrumMatch(mode, lam, complex(ev[j])))
    matches.sort(key=lambda m: (m.mode, -m.analytic.imag))
    return matches


def mode_errors(matches: list[SpectrumMatch]) -> dict[int, float]:
    """Worst absolute mismatch per spatial mode."""
    worst: dict[int, float] = {}
    for m in matches:
        worst[m.mode] = max(worst.get(m.mode, 0.0), m.abs_error)
    return worst


def integrate_linear(z0: MagnetizationField, p: LLParams,
                     at: LinearizationPoint, inp: HarmonicInput | None,
                     t_end: float, dt: float | None = None,
                     probe: ProbeSpec = ProbeSpec(0.6, 1),
                     samples_per_period: int = SAMPLES_PER_PERIOD) -> Trajectory:
    """RK4 for z' = A z + u(t) e_channel; no constraint, no projection.

    The step bound is the same explicit bound as the nonlinear solver,
    h^2/(4 nu + 2), which keeps the fastest discrete mode well inside the
    RK4 stability region.
    """
    if z0.grid != p.grid:
        raise ValueError("initial field and parameters use different grids")
    bound = p.stability_dt()
    dt_max = default_dt(p, inp.omega if inp else None) if dt is None else float(dt)
    if dt_max > bound * (1.0 + 1e-12):
        raise StabilityError(
            f"dt={dt_max:g} exceeds the explicit stability bound {bound:g}"
        )
    period = inp.period if inp else None
    n_steps, dt_act, stride = plan_steps(t_end, dt_max, samples_per_period, period)

    z = z0.values.copy()
    n_rec = n_steps // stride + 1
    y_rec = np.empty(n_rec)
    amp = inp.amplitude if inp else 0.0
    omega = inp.omega if inp else 1.0
    cos_shape = bool(inp and inp.shape == "cosine")
    ch = (inp.channel - 1) if (inp and inp.channel) else (0 if inp else -1)
    node = probe.node(p.grid)
    comp = probe.channel - 1
    a = at.a
    bad = _kernels.lin_rk4(z, p.nu, a[0], a[1], a[2], p.grid.h, amp, omega,
                           cos_shape, ch, 0.0, dt_act, n_steps, stride,
                           node, comp, y_rec)
    times = (np.arange(n_rec) * stride) * dt_act
    if bad >= 0:
        raise BlowUpError(float(times[bad]))
    inputs = evaluate_input(inp, times) if inp else np.zeros(n_rec)
    meta = {
        "dt": dt_act,
        "n_steps": n_steps,
        "record_stride": stride,
        "probe_node": node,
        "probe_x": node * p.grid.h,
        "probe_channel": probe.channel,
        "final_field": MagnetizationField(p.grid, z),
    }
    if period is not None:
        meta["records_per_period"] = int(round(period / (stride * dt_act)))
    return Trajectory(times, y_rec, np.asarray(inputs), meta)
