"""Shared numeric types: 3-vectors, spatial grids, fields, signals, trajectories.

Everything in this module is an immutable value: arrays handed to a
constructor are copied and frozen (``writeable=False``), so instances can be
shared freely between threads and sweep workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

#: Tolerance for accepting a field as sitting on the unit-norm constraint.
#: Far below spatial discretization error, so genuine drift is still caught.
NORM_TOL_STRICT = 1e-9

#: Looser tolerance used by right-hand-side evaluations, which accept states
#: produced by a projected integrator mid-analysis.
NORM_TOL_LOOSE = 1e-6


class StabilityError(ValueError):
    """A requested time step violates an explicit stability or resolution bound."""


class ConstraintError(ValueError):
    """A magnetization state violates the unit-norm constraint beyond tolerance."""


class BlowUpError(RuntimeError):
    """Non-finite state encountered during time integration."""

    def __init__(self, time: float, message: str = ""):
        self.time = time
        super().__init__(message or f"non-finite state encountered at t={time:g}")


def _as_finite_array(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite (no NaN/Inf)")
    return arr


def as_vec3(v, name: str = "vector") -> np.ndarray:
    """Validate and return a finite 3-vector as a float array of shape (3,)."""
    arr = _as_finite_array(v, name)
    if arr.shape != (3,):
        raise ValueError(f"{name} must have shape (3,), got {arr.shape}")
    return arr


def cross(a, b) -> np.ndarray:
    """Cross product of 3-vectors, broadcasting over leading axes.

    Componentwise, ``cross(a, b) = (a2*b3 - a3*b2, a3*b1 - a1*b3,
    a1*b2 - a2*b1)``.  Inputs must be finite; the last axis must have
    length 3.
    """
    a = _as_finite_array(a, "a")
    b = _as_finite_array(b, "b")
    if a.shape[-1] != 3 or b.shape[-1] != 3:
        raise ValueError("cross requires arrays with last axis of length 3")
    return _cross_raw(a, b)


def _cross_raw(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # Explicit component formula; faster than np.cross for small operands.
    out = np.empty(np.broadcast_shapes(a.shape, b.shape), dtype=float)
    out[..., 0] = a[..., 1] * b[..., 2] - a[..., 2] * b[..., 1]
    out[..., 1] = a[..., 2] * b[..., 0] - a[..., 0] * b[..., 2]
    out[..., 2] = a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]
    return out


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class SpatialGrid:
    """Uniform grid on [0, length] with nodes at j*h, j = 0..n-1."""

    length: float
    n: int

    def __post_init__(self):
        if not (np.isfinite(self.length) and self.length > 0):
            raise ValueError("grid length must be positive and finite")
        if self.n < 3:
            raise ValueError("grid needs at least 3 nodes")

    @property
    def h(self) -> float:
        return self.length / (self.n - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.n) * self.h

    def nearest_node(self, x: float) -> int:
        """Index of the node closest to x (snap distance is at most h/2)."""
        if not 0.0 <= x <= self.length:
            raise ValueError(f"x={x} outside [0, {self.length}]")
        return int(round(x / self.h))


@dataclass(frozen=True)
class MagnetizationField:
    """Vec3-valued samples on a :class:`SpatialGrid`.

    ``values`` has shape ``(grid.n, 3)``.  Unit-norm is *not* enforced at
    construction (derivative-valued fields use this type too); call
    :meth:`require_unit_norm` where the constraint matters.
    """

    grid: SpatialGrid
    values: np.ndarray

    def __post_init__(self):
        vals = _as_finite_array(self.values, "field values")
        if vals.shape != (self.grid.n, 3):
            raise ValueError(
                f"values shape {vals.shape} does not match grid ({self.grid.n}, 3)"
            )
        object.__setattr__(self, "values", _frozen(vals))

    def norms(self) -> np.ndarray:
        return np.sqrt((self.values**2).sum(axis=1))

    def max_norm_deviation(self) -> float:
        return float(np.abs(self.norms() - 1.0).max())

    def require_unit_norm(self, tol: float = NORM_TOL_STRICT) -> None:
        dev = self.max_norm_deviation()
        if dev > tol:
            raise ConstraintError(
                f"field is off the unit sphere by {dev:.3e} (tol {tol:.1e})"
            )

    def renormalized(self) -> "MagnetizationField":
        """Project every node back onto the unit sphere."""
        nr = self.norms()
        if np.any(nr == 0.0):
            raise ConstraintError("cannot renormalize a zero vector")
        return MagnetizationField(self.grid, self.values / nr[:, None])

    @staticmethod
    def constant(grid: SpatialGrid, v) -> "MagnetizationField":
        v = as_vec3(v)
        return MagnetizationField(grid, np.tile(v, (grid.n, 1)))


@dataclass(frozen=True)
class HarmonicInput:
    """Sinusoidal input ``amplitude * sin(omega*t)`` or ``* cos(omega*t)``.

    ``channel`` selects the driven vector component (1..3) for field-valued
    systems and is None for scalar systems.
    """

    amplitude: float
    omega: float
    shape: str = "sine"
    channel: int | None = None

    def __post_init__(self):
        if not np.isfinite(self.amplitude):
            raise ValueError("amplitude must be finite")
        if not (np.isfinite(self.omega) and self.omega > 0):
            raise ValueError("omega must be positive")
        if self.shape not in ("sine", "cosine"):
            raise ValueError("shape must be 'sine' or 'cosine'")
        if self.channel is not None and self.channel not in (1, 2, 3):
            raise ValueError("channel must be 1, 2 or 3")

    @property
    def period(self) -> float:
        return 2.0 * np.pi / self.omega


def evaluate_input(sig: HarmonicInput, t) -> np.ndarray | float:
    """Evaluate the input signal at time(s) t >= 0."""
    t_arr = _as_finite_array(t, "t")
    if np.any(t_arr < 0):
        raise ValueError("t must be nonnegative")
    phase = sig.omega * t_arr
    vals = sig.amplitude * (np.sin(phase) if sig.shape == "sine" else np.cos(phase))
    return float(vals) if np.isscalar(t) or vals.ndim == 0 else vals


@dataclass(frozen=True)
class Trajectory:
    """Time series of probe values with the matching scalar input samples.

    ``samples`` holds the probed output (scalar per time here); ``inputs``
    the scalar input value at the same instants.  ``meta`` carries run
    diagnostics (actual dt, record stride, probe node, ...) and is excluded
    from value semantics.
    """

    times: np.ndarray
    samples: np.ndarray
    inputs: np.ndarray
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        times = _as_finite_array(self.times, "times")
        samples = _as_finite_array(self.samples, "samples")
        inputs = _as_finite_array(self.inputs, "inputs")
        if times.ndim != 1:
            raise ValueError("times must be 1-D")
        if len(samples) != len(times) or len(inputs) != len(times):
            raise ValueError("times, samples and inputs must have equal length")
        if len(times) > 1 and not np.all(np.diff(times) > 0):
            raise ValueError("times must be strictly increasing")
        object.__setattr__(self, "times", _frozen(times))
        object.__setattr__(self, "samples", _frozen(samples))
        object.__setattr__(self, "inputs", _frozen(inputs))

    def __len__(self) -> int:
        return len(self.times)


def plan_steps(t_end: float, dt_max: float, samples_target: int,
               period: float | None = None) -> tuple[int, float, int]:
    """Choose (n_steps, dt, record_stride) covering [0, t_end].

    With a ``period``, steps are laid out so that whole periods land exactly
    on recorded samples: the per-period step count is rounded up to a
    multiple of the record stride, and the run may extend slightly past
    ``t_end`` to keep the record grid aligned.  ``dt`` never exceeds
    ``dt_max`` and the recorded grid always contains both endpoints.
    """
    if dt_max <= 0:
        raise StabilityError("dt must be positive")
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    if period is not None:
        steps_pp = int(np.ceil(period / dt_max - 1e-12))
        stride = max(1, int(np.ceil(steps_pp / samples_target)))
        steps_pp = stride * int(np.ceil(steps_pp / stride))
        dt = period / steps_pp
        n_steps = int(np.ceil(t_end / dt - 1e-9))
        n_steps = stride * int(np.ceil(n_steps / stride))
        return n_steps, dt, stride
    n_steps = int(np.ceil(t_end / dt_max - 1e-12))
    stride = max(1, int(np.ceil(n_steps / samples_target)))
    n_steps = stride * int(np.ceil(n_steps / stride))
    return n_steps, t_end / n_steps, stride
