"""Convex function model, gap functionals and the elementary inequality checks.

Every operation accepts scalars or numpy arrays. Scalars in give Python
floats (or bools) out; arrays broadcast elementwise.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .errors import (
    ConstraintError,
    DomainError,
    LengthMismatch,
    NotConvexError,
    OrderError,
    ParameterError,
)

DEFAULT_ATOL = 1e-9
DEFAULT_RTOL = 1e-9

# construction-time finiteness probe
_PROBE_POINTS = 101


def slack(lhs, rhs, atol=DEFAULT_ATOL, rtol=DEFAULT_RTOL):
    """Allowed excess of ``lhs`` over ``rhs`` under the tolerance policy."""
    return atol + rtol * np.maximum(np.abs(lhs), np.abs(rhs))


def holds(lhs, rhs, atol=DEFAULT_ATOL, rtol=DEFAULT_RTOL):
    """True where ``lhs <= rhs`` up to ``atol + rtol*max(|lhs|, |rhs|)``."""
    out = np.asarray(lhs) <= np.asarray(rhs) + slack(lhs, rhs, atol, rtol)
    return bool(out) if out.ndim == 0 else out


def close(x, y, atol=DEFAULT_ATOL, rtol=DEFAULT_RTOL):
    """Two-sided version of :func:`holds`."""
    out = np.abs(np.asarray(x) - np.asarray(y)) <= slack(x, y, atol, rtol)
    return bool(out) if out.ndim == 0 else out


def _scalarize(v):
    v = np.asarray(v)
    if v.ndim == 0:
        return bool(v) if v.dtype == bool else float(v)
    return v


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[a, b]`` with finite endpoints and ``a < b``."""

    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise DomainError(f"interval endpoints must be finite, got [{a}, {b}]")
        if not a < b:
            raise DomainError(f"degenerate or reversed interval [{a}, {b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def midpoint(self) -> float:
        return (self.a + self.b) / 2

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def _ulp_slack(self) -> float:
        # absorbs rounding in expressions like p*a + q*b
        return 4 * np.finfo(float).eps * max(abs(self.a), abs(self.b), 1.0)

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        s = self._ulp_slack
        return _scalarize((x >= self.a - s) & (x <= self.b + s))

    def reflect(self, t):
        """The reflection ``t -> a + b - t``."""
        return self.a + self.b - t

    def grid(self, n: int) -> np.ndarray:
        """``n`` uniform points including both endpoints exactly."""
        g = np.linspace(self.a, self.b, n)
        g[0], g[-1] = self.a, self.b
        return g

    @classmethod
    def parse(cls, text: str) -> "Interval":
        """Parse ``"a,b"``."""
        parts = text.split(",")
        if len(parts) != 2:
            raise DomainError(f"interval must look like 'a,b', got {text!r}")
        try:
            return cls(float(parts[0]), float(parts[1]))
        except ValueError as exc:
            raise DomainError(f"bad interval {text!r}: {exc}") from None


@dataclass(frozen=True)
class WeightPair:
    """Two nonnegative weights summing to one; ``q`` is always ``1 - p``."""

    p: float
    q: float = field(init=False)

    def __post_init__(self):
        p = float(self.p)
        if not 0.0 <= p <= 1.0:
            raise ParameterError(f"weight p must lie in [0, 1], got {p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", 1.0 - p)


@dataclass(frozen=True)
class WeightVector:
    """Probability vector of length at least 2, renormalized at construction."""

    weights: tuple

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        if w.size < 2:
            raise LengthMismatch("a weight vector needs at least two entries")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise ParameterError("weights must be finite and nonnegative")
        total = math.fsum(w)
        if abs(total - 1.0) > 1e-12:
            raise ParameterError(f"weights sum to {total!r}, not 1")
        object.__setattr__(self, "weights", tuple(float(v) for v in w / total))

    def __len__(self):
        return len(self.weights)

    def as_array(self) -> np.ndarray:
        return np.array(self.weights)


class Certificate(enum.Enum):
    PROVABLY_CONVEX = "ProvablyConvex"
    SAMPLED = "Sampled"
    ASSERTED = "Asserted"


@dataclass(frozen=True)
class ConvexFunction:
    """A real function on an interval together with how we know it is convex.

    ``evaluator`` should accept numpy arrays; scalar-only callables are
    vectorized transparently. Calling the function checks that every point
    lies in the domain.
    """

    domain: Interval
    evaluator: Callable
    certificate: Certificate = Certificate.ASSERTED
    label: str = "f"

    def __post_init__(self):
        probe = self.domain.grid(_PROBE_POINTS)
        vals = self._eval(probe)
        if not np.all(np.isfinite(vals)):
            bad = probe[~np.isfinite(vals)][0]
            raise DomainError(f"{self.label} is not finite at x={bad!r} on {self.domain}")

    def _eval(self, x: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            try:
                y = np.asarray(self.evaluator(x), dtype=float)
            except TypeError:
                y = None
            if y is None or y.shape != x.shape:
                y = np.vectorize(self.evaluator, otypes=[float])(x)
        return y

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        _require_in_domain(self.domain, x)
        x = np.clip(x, self.domain.a, self.domain.b)
        return _scalarize(self._eval(x))

    @property
    def a(self) -> float:
        return self.domain.a

    @property
    def b(self) -> float:
        return self.domain.b


def _require_in_domain(domain: Interval, *points):
    for x in points:
        inside = np.asarray(domain.contains(x))
        if not np.all(inside):
            bad = np.asarray(x, dtype=float)[~inside] if np.ndim(x) else x
            bad = np.ravel(bad)[0]
            raise DomainError(f"point {float(bad)!r} lies outside [{domain.a}, {domain.b}]")


# ---------------------------------------------------------------- builders


def square(domain: Interval) -> ConvexFunction:
    return ConvexFunction(domain, np.square, Certificate.PROVABLY_CONVEX, "square")


def exponential(domain: Interval) -> ConvexFunction:
    return ConvexFunction(domain, np.exp, Certificate.PROVABLY_CONVEX, "exp")


def abs_shift(domain: Interval, c: float = 0.0) -> ConvexFunction:
    """``|x - c|``."""
    c = float(c)
    return ConvexFunction(
        domain, lambda x: np.abs(x - c), Certificate.PROVABLY_CONVEX, f"abs_shift:{c!r}"
    )


def neglog(domain: Interval) -> ConvexFunction:
    """``-log x``; needs ``a > 0``."""
    if domain.a <= 0:
        raise DomainError("neglog needs a positive interval")
    return ConvexFunction(domain, lambda x: -np.log(x), Certificate.PROVABLY_CONVEX, "neglog")


def affine(domain: Interval, c0: float = 0.0, c1: float = 1.0) -> ConvexFunction:
    """``c0 + c1*x``."""
    c0, c1 = float(c0), float(c1)
    return ConvexFunction(
        domain, lambda x: c0 + c1 * x, Certificate.PROVABLY_CONVEX, f"affine:{c0!r}:{c1!r}"
    )


@dataclass(frozen=True)
class HingeQuadratic:
    """``c0 + c1*x + q*x**2 + sum_k w_k*max(0, x - t_k)`` with ``q, w_k >= 0``."""

    c0: float
    c1: float
    q: float
    knots: tuple = ()
    weights: tuple = ()

    def __post_init__(self):
        if self.q < 0 or any(w < 0 for w in self.weights):
            raise ParameterError("quadratic and hinge coefficients must be nonnegative")
        if len(self.knots) != len(self.weights):
            raise LengthMismatch("one weight per knot")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        y = self.c0 + self.c1 * x + self.q * x * x
        for t, w in zip(self.knots, self.weights):
            y = y + w * np.maximum(0.0, x - t)
        return y


def quadratic_hinge(domain: Interval, model: HingeQuadratic, label: str | None = None) -> ConvexFunction:
    return ConvexFunction(
        domain, model, Certificate.PROVABLY_CONVEX, label or "quad_hinge"
    )


def slopes_nondecreasing(xs: Sequence[float], ys: Sequence[float]) -> bool:
    """Exact check that consecutive chord slopes never decrease.

    The floats are converted to rationals, so there is no tolerance.
    """
    fx = [Fraction(float(v)) for v in xs]
    fy = [Fraction(float(v)) for v in ys]
    slopes = [(fy[i + 1] - fy[i]) / (fx[i + 1] - fx[i]) for i in range(len(fx) - 1)]
    return all(s0 <= s1 for s0, s1 in zip(slopes, slopes[1:]))


def _validated_samples(xs, ys):
    xs = np.asarray(xs, dtype=float).ravel()
    ys = np.asarray(ys, dtype=float).ravel()
    if xs.size != ys.size:
        raise LengthMismatch(f"{xs.size} abscissae but {ys.size} values")
    if xs.size < 2:
        raise ParameterError("need at least two samples")
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
        raise ParameterError("samples must be finite")
    if np.any(np.diff(xs) <= 0):
        raise OrderError("sample abscissae must be strictly increasing")
    return xs, ys


def piecewise_linear(xs, ys, *, require_convex: bool = True, label: str = "pwl") -> ConvexFunction:
    """Linear interpolant through ``(xs, ys)`` on ``[xs[0], xs[-1]]``.

    Certified ``PROVABLY_CONVEX`` when the slopes are nondecreasing. Otherwise
    raises :class:`NotConvexError`, unless ``require_convex`` is false, in
    which case the result is marked ``ASSERTED``.
    """
    xs, ys = _validated_samples(xs, ys)
    if slopes_nondecreasing(xs, ys):
        cert = Certificate.PROVABLY_CONVEX
    elif require_convex:
        raise NotConvexError(f"{label}: chord slopes decrease somewhere")
    else:
        cert = Certificate.ASSERTED
    return ConvexFunction(
        Interval(xs[0], xs[-1]), lambda x: np.interp(x, xs, ys), cert, label
    )


def read_samples_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Read a two-column ``x,f(x)`` CSV; a non-numeric first field marks a header."""
    xs, ys = [], []
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if rows:
        try:
            float(rows[0][0])
        except ValueError:
            rows = rows[1:]
    for lineno, row in enumerate(rows, 1):
        if len(row) != 2:
            raise ParameterError(f"{path}: row {lineno} must have exactly two columns")
        try:
            xs.append(float(row[0]))
            ys.append(float(row[1]))
        except ValueError:
            raise ParameterError(f"{path}: row {lineno} is not numeric") from None
    return _validated_samples(xs, ys)


def from_csv(path, *, require_convex: bool = True) -> ConvexFunction:
    xs, ys = read_samples_csv(path)
    return piecewise_linear(xs, ys, require_convex=require_convex, label=f"file:{Path(path).name}")


def midpoint_convexity_witness(f: ConvexFunction, n: int = 1000, seed: int = 0):
    """Search random pairs for a violation of midpoint convexity.

    Returns ``(x, y)`` for the worst violation, or ``None`` if all pass.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    x = rng.uniform(f.a, f.b, n)
    y = rng.uniform(f.a, f.b, n)
    lhs = f((x + y) / 2)
    rhs = (f(x) + f(y)) / 2
    ok = holds(lhs, rhs)
    if np.all(ok):
        return None
    i = int(np.argmax(lhs - rhs))
    return float(x[i]), float(y[i])


def sampled(domain: Interval, evaluator: Callable, label: str = "f", n: int = 1000, seed: int = 0) -> ConvexFunction:
    """Wrap a black-box function whose convexity is only spot-checked."""
    f = ConvexFunction(domain, evaluator, Certificate.SAMPLED, label)
    witness = midpoint_convexity_witness(f, n, seed)
    if witness is not None:
        raise NotConvexError(f"{label}: midpoint convexity fails at {witness}")
    return f


# ---------------------------------------------------------------- operations


def midpoint_gap(f: ConvexFunction, s, t):
    """``f(s) + f(t) - 2 f((s+t)/2)``."""
    _require_in_domain(f.domain, s, t)
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    return _scalarize(f(s) + f(t) - 2 * f((s + t) / 2))


def _weights(w):
    p = w.p if isinstance(w, WeightPair) else np.asarray(w, dtype=float)
    if np.any((p < 0) | (p > 1)):
        raise ParameterError("weight p must lie in [0, 1]")
    return p, 1.0 - p


def weighted_gap(f: ConvexFunction, w, x, y):
    """``p f(x) + q f(y) - f(p x + q y)``.

    ``w`` is a :class:`WeightPair` or the weight ``p`` itself (scalar or array).
    """
    _require_in_domain(f.domain, x, y)
    p, q = _weights(w)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return _scalarize(p * f(x) + q * f(y) - f(p * x + q * y))


def jensen_functional(f: ConvexFunction, w, xs) -> float:
    """``sum p_i f(x_i) - f(sum p_i x_i)``."""
    if not isinstance(w, WeightVector):
        w = WeightVector(tuple(w))
    xs = np.asarray(xs, dtype=float).ravel()
    if xs.size != len(w):
        raise LengthMismatch(f"{len(w)} weights but {xs.size} points")
    _require_in_domain(f.domain, xs)
    p = w.as_array()
    return float(math.fsum(p * f(xs)) - f(math.fsum(p * xs)))


def lemma1_sides(f: ConvexFunction, x1, x2, x3):
    """Both sides of the two three-point inequalities.

    Returns ``((lhs_i, rhs_i), (lhs_ii, rhs_ii))`` where part (i) claims
    ``lhs_i <= rhs_i`` and part (ii) claims ``lhs_ii >= rhs_ii``.
    """
    x1, x2, x3 = (np.asarray(v, dtype=float) for v in (x1, x2, x3))
    _require_in_domain(f.domain, x1, x2, x3)
    if not np.all((x1 < x2) & (x2 < x3)):
        raise OrderError("need x1 < x2 < x3")
    f1, f2, f3 = f(x1), f(x2), f(x3)
    m13 = f((x1 + x3) / 2)
    part_i = ((f2 - f1) / 2, f((x2 + x3) / 2) - m13)
    part_ii = ((f3 - f2) / 2, m13 - f((x1 + x2) / 2))
    return (
        tuple(_scalarize(v) for v in part_i),
        tuple(_scalarize(v) for v in part_ii),
    )


def lemma1_check(f: ConvexFunction, x1, x2, x3, atol=DEFAULT_ATOL, rtol=DEFAULT_RTOL):
    """``(part_i_holds, part_ii_holds)`` within the tolerance policy."""
    (l1, r1), (l2, r2) = lemma1_sides(f, x1, x2, x3)
    return holds(l1, r1, atol, rtol), holds(r2, l2, atol, rtol)


def chord_sum_check(f: ConvexFunction, x, y, atol=DEFAULT_ATOL, rtol=DEFAULT_RTOL):
    """``f(x) + f(y) <= f(a) + f(b)`` for points symmetric about the midpoint."""
    _require_in_domain(f.domain, x, y)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(np.abs(x + y - (f.a + f.b)) > 1e-12):
        raise ConstraintError("x + y must equal a + b")
    return holds(f(x) + f(y), f(f.a) + f(f.b), atol, rtol)


def chain4_bounds(f: ConvexFunction, w):
    """``(2 f(mid), f(pa+qb) + f(pb+qa), f(a) + f(b))``."""
    p, q = _weights(w)
    a, b = f.a, f.b
    lower = 2 * f(f.domain.midpoint)
    middle = f(p * a + q * b) + f(p * b + q * a)
    upper = f(a) + f(b)
    return lower, _scalarize(middle), upper
