"""
Hermite-Hadamard from the symmetric-pair chain
==============================================

Averaging ``2 f(mid) <= f(pa+qb) + f(pb+qa) <= f(a) + f(b)`` over ``p``
gives the Hermite-Hadamard inequality. ``hh_recover`` computes the mean of
``f`` both ways and insists they agree.
"""

import math

from convexgap import Interval, hh_recover
from convexgap.convex_core import abs_shift, chain4_bounds, exponential, square

f = square(Interval(0.0, 1.0))
for p in (0.5, 0.75, 1.0):
    print(f"p = {p}: chain {chain4_bounds(f, p)}")

for f in (square(Interval(0, 1)), exponential(Interval(0, 1)), abs_shift(Interval(-1, 2), 0.25)):
    lo, mean, up = hh_recover(f)
    print(f"{f.label:16s} f(mid) = {lo:.6f} <= mean = {mean:.6f} <= ends = {up:.6f}")
print("closed form for e^x:", math.sqrt(math.e), math.e - 1, (1 + math.e) / 2)
