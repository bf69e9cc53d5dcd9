"""Both hysteresis diagnostics, side by side, for all five built-ins.

State-space view: count the stable equilibria.  Input-output view: drive
the system periodically and watch whether the loop survives as the
frequency drops.  The two columns agree system for system: loops persist
exactly where multiple stable equilibria exist, and nonlinearity is
irrelevant (two of the persisting systems are linear).

The sweep here stops at omega = 0.01 for speed; the acceptance suite runs
the full ladder down to 0.001.
"""

from llhyst import hysteresis, systems

OMEGAS = [1.0, 0.1, 0.01]

print(f"{'system':<18} {'equilibria':<14} {'mult. stable':<13} "
      f"{'sweep verdict':<15} {'norm. area at 0.01'}")
print("-" * 78)
for name in systems.SYSTEM_NAMES:
    census = hysteresis.equilibrium_census(name)
    result = hysteresis.sweep(systems.make_runner(name), OMEGAS)
    norm = result.normalized_areas()[-1]
    print(f"{name:<18} {census.count:<14} {str(census.multiple_stable):<13} "
          f"{result.verdict:<15} {norm:.4f}")

print()
print("note: at omega = 0.01 the linear spring's loop has not finished dying")
print("(normalized area ~ 0.12); the full sweep to 0.001 drives it under the")
print("vanishing cut and the verdict becomes loop-vanishes")
