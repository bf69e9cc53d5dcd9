"""Two damped oscillators, two fates for the input-output loop.

The linear oscillator y'' + 15 y' + y = sin(wt) has a single stable
equilibrium: as the forcing slows down, the response settles onto the
static curve y = u and the loop between input and output collapses.  The
bistable variant y'' + 15 y' - (y - y^3) = sin(wt) hops between two stable
branches instead, and its loop survives arbitrarily slow forcing.

Runs in a few seconds; writes SVG loop plots next to this script.
"""

from pathlib import Path

import numpy as np

from llhyst import hysteresis, odebench, systems
from llhyst.core import HarmonicInput
from llhyst.odebench import SecondOrderParams, SecondOrderState
from llhyst.svgplot import write_line_svg

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

# --- sanity: the integrator agrees with the exact response ---------------
params = SecondOrderParams(15.0, 1.0)
inp = HarmonicInput(1.0, 1.0, "sine")
traj = odebench.integrate(params, inp, SecondOrderState(0.0, 0.0), 3 * inp.period)
exact = odebench.closed_form_linear(15.0, 1.0, 1.0, 0.0, 0.0, traj.times)
print(f"integrator vs closed form, max error: {np.abs(traj.samples - exact).max():.2e}")

# --- frequency sweeps (trimmed to omega >= 0.01 to stay quick) -----------
omegas = [1.0, 0.1, 0.01]
for name in ("linear-spring", "nonlinear-spring"):
    result = hysteresis.sweep(systems.make_runner(name), omegas)
    print(f"\n{name}: verdict {result.verdict}")
    for om, m in result.entries:
        print(f"  omega={om:<6g} |area|={abs(m.area):.4f} "
              f"normalized={m.normalized_area:.4f}")
    series = [(c.u, c.y, f"omega={om:g}")
              for (om, _), c in zip(result.entries, result.curves)]
    write_line_svg(OUT / f"{name}_loops.svg", series,
                   title=f"{name}: input-output loops", xlabel="u", ylabel="y")
    print(f"  wrote {OUT / f'{name}_loops.svg'}")

# --- why they differ: the equilibrium structure ---------------------------
for name in ("linear-spring", "nonlinear-spring"):
    census = hysteresis.equilibrium_census(name)
    print(f"\n{name}: {census.count} equilibria "
          f"({census.stable} stable), multiple stable: {census.multiple_stable}")
    print(f"  {census.notes}")
