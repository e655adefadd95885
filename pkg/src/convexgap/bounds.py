"""Global upper bounds on the Jensen functional over an interval."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .convex_core import (
    DEFAULT_ATOL,
    DEFAULT_RTOL,
    ConvexFunction,
    holds,
    midpoint_gap,
    weighted_gap,
)
from .errors import ConvergenceError, ToleranceError

MAX_ITERATIONS = 200
_INV_PHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class BoundReport:
    t_opt: float
    t_prime: float
    argmax_p: float
    iterations: int

    @property
    def dominance(self) -> bool:
        return holds(self.t_opt, self.t_prime)


def t_prime(f: ConvexFunction) -> float:
    """The coarse closed-form bound ``f(a) + f(b) - 2 f((a+b)/2)``."""
    return midpoint_gap(f, f.a, f.b)


def endpoint_gap(f: ConvexFunction, p):
    """``h(p) = p f(a) + (1-p) f(b) - f(p a + (1-p) b)``, concave in ``p``."""
    return weighted_gap(f, p, f.a, f.b)


def golden_section_max(h, lo: float, hi: float, tol: float, max_iter: int = MAX_ITERATIONS):
    """Maximize a concave ``h`` on ``[lo, hi]``.

    Returns ``(x_best, h_best, iterations)``. The bracket is shrunk until it
    is narrower than ``tol``; the best point ever evaluated (endpoints
    included) is returned so plateaus cannot lose value.
    """
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    hc, hd = h(c), h(d)
    best = max([(h(lo), lo), (h(hi), hi), (hc, c), (hd, d)])
    it = 0
    while b - a > tol:
        if it >= max_iter:
            raise ConvergenceError(f"golden-section search did not reach width {tol} in {max_iter} iterations")
        it += 1
        if hc >= hd:
            b, d, hd = d, c, hc
            c = b - _INV_PHI * (b - a)
            hc = h(c)
            best = max(best, (hc, c))
        else:
            a, c, hc = c, d, hd
            d = a + _INV_PHI * (b - a)
            hd = h(d)
            best = max(best, (hd, d))
    mid = (a + b) / 2
    best = max(best, (h(mid), mid))
    return best[1], best[0], it


def t_opt(f: ConvexFunction, tol_p: float = 1e-10) -> BoundReport:
    """Optimal global bound ``max_p h(p)`` by golden-section search."""
    if not tol_p > 0:
        raise ToleranceError(f"tol_p must be positive, got {tol_p}")
    p, value, it = golden_section_max(lambda p: endpoint_gap(f, p), 0.0, 1.0, tol_p)
    return BoundReport(t_opt=value, t_prime=t_prime(f), argmax_p=p, iterations=it)


def prop_z_links(f: ConvexFunction, w, x, y):
    """``(F*(p;x,y), F(x,y), F(a,b))``, the three terms of the dominance chain."""
    return (
        weighted_gap(f, w, x, y),
        midpoint_gap(f, x, y),
        midpoint_gap(f, f.a, f.b),
    )


def prop_z_check(f: ConvexFunction, w, x, y, atol=DEFAULT_ATOL, rtol=DEFAULT_RTOL):
    """Both links ``F*(p;x,y) <= F(x,y)`` and ``F(x,y) <= F(a,b)``."""
    fstar, fxy, fab = prop_z_links(f, w, x, y)
    first = holds(fstar, fxy, atol, rtol)
    second = holds(fxy, fab, atol, rtol)
    return first & second
