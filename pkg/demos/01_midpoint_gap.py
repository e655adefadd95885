"""
Where does the midpoint gap peak?
=================================

For a convex ``f`` on ``[a, b]`` the midpoint gap
``F(s, t) = f(s) + f(t) - 2 f((s+t)/2)`` is largest at the endpoints.
We check this by brute force on a grid, then show how a concave function
breaks it.
"""

import numpy as np

from convexgap import Interval, grid_max_F, midpoint_gap
from convexgap.convex_core import ConvexFunction, exponential, square

I = Interval(0.0, 1.0)

# A few closed forms first.
print("x^2:", midpoint_gap(square(I), 0.0, 1.0))            # 0.5
print("e^x:", midpoint_gap(exponential(I), 0.0, 1.0))       # 1 + e - 2 sqrt(e)

# Exhaustive 201 x 201 scan: the maximum sits at the corner (a, b).
res = grid_max_F(exponential(I), n=201)
print(f"grid max {res.max_value:.12f} at {res.argmax}, F(a,b) = {res.endpoint_value:.12f}")

# sin is concave on [0, 3]; the gap is nonpositive and the corner is the minimum.
f = ConvexFunction(Interval(0.0, 3.0), np.sin, label="sin")
res = grid_max_F(f)
print(f"sin: grid max {res.max_value:.3g} at {res.argmax}, F(a,b) = {res.endpoint_value:.3f}")
print("endpoint is max?", res.endpoint_is_max())
