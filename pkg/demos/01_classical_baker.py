"""
The classical baker's map and its periodic orbits.

Run with ``python demos/01_classical_baker.py``.
"""

# %% One step stretches q by two and folds the right half on top.
from fractions import Fraction

import numpy as np

from bakerotoc.classical import PhasePoint, baker_step, bit_reverse, iterate, periodic_points

x = PhasePoint(0.3, 0.6)
for t in range(4):
    print(f"t={t}: q={x.q:.4f} p={x.p:.4f}")
    x = baker_step(x)

# %% The binary expansion of q shifts left each step, so nearby points separate like 2^t.
a, b = PhasePoint(0.3, 0.6), PhasePoint(0.3 + 1e-9, 0.6)
for t in (0, 5, 10, 20, 25):
    print(f"t={t:2d}  |dq| = {abs(iterate(a, t).q - iterate(b, t).q):.3e}")
print("growth per step ~ ln 2 =", np.log(2))

# %% Period-t points sit at q = nu/(2^t-1), p = bitrev(nu)/(2^t-1).
t = 4
table = periodic_points(t)
print(f"{len(table.nu)} period-{t} points")
for nu, nb, q, p in list(table)[:6]:
    print(f"nu={nu:2d} ({nu:04b})  nu_bar={nb:2d} ({nb:04b})  q={q}  p={p}")

# %% Exact return check with rationals (floats drift after ~50 doublings).
q, p = Fraction(5, 15), Fraction(bit_reverse(5, 4), 15)
for _ in range(4):
    q, p = (2 * q) % 1, (p + int(2 * q >= 1)) / 2
print("returned exactly:", (q, p) == (Fraction(5, 15), Fraction(bit_reverse(5, 4), 15)))
