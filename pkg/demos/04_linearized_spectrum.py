"""Spectral verification of the linearized magnetization dynamics.

Linearizing about a constant unit equilibrium a gives z' = nu*z_xx +
a x z_xx with zero-slope ends.  Separating variables over the cosine modes
yields the eigenvalues in closed form; assembling the dense nodal matrix
and solving the full eigenproblem must reproduce them to second order in
the grid spacing.  The zero eigenvalue has multiplicity three: the
constant fields, i.e. the equilibrium continuum itself.
"""

import numpy as np

from llhyst.core import SpatialGrid
from llhyst.llpde import LLParams
from llhyst.lllin import (
    LinearizationPoint,
    analytic_spectrum,
    discretize_A,
    match_spectrum,
    numeric_spectrum,
)

at = LinearizationPoint(np.array([1.0, 0.0, 0.0]))

for n in (41, 81):
    p = LLParams(0.02, SpatialGrid(1.0, n))
    ev = numeric_spectrum(discretize_A(p, at))
    print(f"n = {n:3d}: matrix size {3 * n}x{3 * n}, "
          f"max Re(lambda) = {ev.real.max():.2e}, "
          f"kernel dimension = {(np.abs(ev) < 1e-10).sum()}")
    matches = match_spectrum(analytic_spectrum(p, 5), ev)
    print(f"  {'mode':>4} {'analytic':>24} {'numeric':>24} {'error':>10}")
    for m in matches:
        if m.analytic.imag < 0:
            continue  # conjugates mirror the printed rows
        print(f"  {m.mode:>4} {m.analytic:>24.5f} {m.numeric:>24.5f} "
              f"{m.abs_error:>10.2e}")
    print()

print("the per-mode error grows like mode^4 h^2 and drops 4x when the grid")
print("is refined from n=41 to n=81: plain second-order convergence")
