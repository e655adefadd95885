"""
Unequal weights: the endpoints are no longer the maximum
========================================================

With equal weights the gap peaks at ``(a, b)``. With unequal weights
``F*(p; x, y) = p f(x) + q f(y) - f(px + qy)`` usually does not, except
for quadratics where ``F* = c p q (x - y)^2``. What survives is the cap
``F*(p; x, y) <= F(a, b)``.
"""

from convexgap import ConvexGeneratorSpec, Interval, fstar_counterexample_search
from convexgap.convex_core import exponential, weighted_gap

f = exponential(Interval(0.0, 1.0))
print("e^x, p=0.9:  F*(a,b) =", weighted_gap(f, 0.9, 0.0, 1.0), "  F*(b,a) =", weighted_gap(f, 0.9, 1.0, 0.0))

p_grid = [k / 10 for k in range(1, 10)]
quadratics = [ConvexGeneratorSpec(0, (0.5, 2.0), (0.0, 0.0), (-1.0, 1.0), seed=s) for s in range(10)]
print("quadratic recipes ->", len(fstar_counterexample_search(quadratics, p_grid, 51)), "counterexamples")

hinged = [ConvexGeneratorSpec(3, seed=s) for s in range(10)]
found = fstar_counterexample_search(hinged, p_grid, 51)
print("hinge recipes ->", len(found), "counterexamples; a few:")
for r in found[:5]:
    print(f"  seed {r.seed}: p={r.p:.1f} at ({r.x:.2f}, {r.y:.2f}) gap {r.value:.4f}"
          f" > endpoint {r.endpoint_value:.4f}, still <= F(a,b) = {r.midpoint_gap_ab:.4f}")
