"""Landau-Lifshitz magnetization dynamics and operational hysteresis detection.

The package bundles three layers:

* three damped second-order benchmark oscillators with closed-form solutions
  (``llhyst.odebench``),
* the Landau-Lifshitz equation on an interval with Neumann ends, both the
  nonlinear form integrated by a projected Runge-Kutta scheme
  (``llhyst.llpde``) and its linearization about a constant equilibrium with
  an analytically known spectrum (``llhyst.lllin``),
* an operational hysteresis classifier that extracts steady-state
  input-output loops and tests whether they persist as the forcing frequency
  goes to zero (``llhyst.hysteresis``), plus a small experiment runner with
  TOML specs, CSV output and SVG loop plots (``llhyst.cli``).
"""

from llhyst.core import (
    BlowUpError,
    ConstraintError,
    HarmonicInput,
    MagnetizationField,
    SpatialGrid,
    StabilityError,
    Trajectory,
    cross,
    evaluate_input,
)
from llhyst.odebench import SecondOrderParams, SecondOrderState
from llhyst.llpde import LLParams, ProbeSpec
from llhyst.lllin import LinearizationPoint, SpectrumEntry
from llhyst.hysteresis import IOCurve, LoopMetrics, SweepResult

__version__ = "0.1.0"

__all__ = [
    "BlowUpError",
    "ConstraintError",
    "HarmonicInput",
    "IOCurve",
    "LLParams",
    "LinearizationPoint",
    "LoopMetrics",
    "MagnetizationField",
    "ProbeSpec",
    "SecondOrderParams",
    "SecondOrderState",
    "SpatialGrid",
    "SpectrumEntry",
    "StabilityError",
    "SweepResult",
    "Trajectory",
    "cross",
    "evaluate_input",
    "__version__",
]
