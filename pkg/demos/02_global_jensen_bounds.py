"""
Two global bounds on the Jensen gap
===================================

Any Jensen gap ``sum p_i f(x_i) - f(sum p_i x_i)`` with points in ``[a, b]``
is bounded by

* ``T_f``, the largest two-point gap at the endpoints, found here by
  golden-section search over the weight, and
* ``T'_f = f(a) + f(b) - 2 f((a+b)/2)``, coarser but closed form.
"""

import numpy as np

from convexgap import Interval, WeightVector, jensen_functional, t_opt
from convexgap.convex_core import exponential, neglog, square

for f in (square(Interval(0, 1)), exponential(Interval(0, 1)), neglog(Interval(0.5, 4))):
    rep = t_opt(f)
    print(f"{f.label:7s} T_f = {rep.t_opt:.10f} (p* = {rep.argmax_p:.6f}, {rep.iterations} iterations)"
          f"   T'_f = {rep.t_prime:.10f}")

# Random Jensen gaps never exceed either bound.
f = exponential(Interval(0, 1))
rep = t_opt(f)
rng = np.random.Generator(np.random.PCG64(0))
gaps = []
for _ in range(2000):
    n = rng.integers(2, 9)
    gaps.append(jensen_functional(f, WeightVector(tuple(rng.dirichlet(np.ones(n)))), rng.uniform(0, 1, n)))
print(f"largest of 2000 random gaps: {max(gaps):.6f} <= T_f = {rep.t_opt:.6f}")
