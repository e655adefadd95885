"""
Weighted Hermite-Hadamard enclosures
====================================

For a nonnegative kernel ``g`` with mass ``M``,

    2 f(mid) M  <=  int (g(t) + g(a+b-t)) f(t) dt  <=  (f(a) + f(b)) M.

Dividing through by ``M`` gives the normalized chain, which for the power
kernel ``t^(alpha-1)`` is the familiar alpha-weighted form.
"""

import math

from convexgap import Interval, log_limit_kernel, power_kernel, sine_kernel, weighted_enclosure
from convexgap.convex_core import affine, exponential, square
from convexgap.quadrature import uniform_kernel

f = exponential(Interval(1.0, 2.0))
kernels = [uniform_kernel(f.domain)] + [power_kernel(f.domain, al) for al in (-1e-4, 1e-4, 0.5, 2.0)]
kernels.append(log_limit_kernel(f.domain))
print(f"{'kernel':14s} {'lower':>10s} {'middle':>10s} {'upper':>10s}  (normalized)")
for g in kernels:
    lo, mid, up = weighted_enclosure(f, g).normalized()
    print(f"{g.label:14s} {lo:10.6f} {mid:10.6f} {up:10.6f}")
# the two small-alpha rows squeeze the log-limit row

# Sine kernel on [0, pi]: a linear function makes all three equal pi.
enc = weighted_enclosure(affine(Interval(0.0, math.pi), 0.0, 1.0), sine_kernel("sine"))
print("f(t) = t with sin kernel:", enc.normalized())

# x^2 with the sin kernel: 2 (pi/2)^2 <= pi^2 - 4 <= pi^2.
print("f(t) = t^2 with sin kernel:", weighted_enclosure(square(Interval(0.0, math.pi)), sine_kernel("sine")).normalized())
