"""Adaptive Simpson quadrature, weight kernels and weighted integral enclosures."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .convex_core import (
    DEFAULT_ATOL,
    DEFAULT_RTOL,
    ConvexFunction,
    Interval,
    _validated_samples,
    holds,
    read_samples_csv,
)
from .errors import (
    ConvergenceError,
    CrossCheckError,
    DomainError,
    DomainMismatch,
    NonFiniteError,
    ParameterError,
)

MAX_DEPTH = 60
_INITIAL_PANELS = 16
_EPS = np.finfo(float).eps


def _vectorized(h: Callable) -> Callable[[np.ndarray], np.ndarray]:
    def hv(x: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            try:
                y = np.asarray(h(x), dtype=float)
            except TypeError:
                y = None
            if y is None or y.shape != x.shape:
                y = np.vectorize(h, otypes=[float])(x)
        return y

    return hv


def _check_finite(values: np.ndarray, where: np.ndarray):
    bad = ~np.isfinite(values)
    if np.any(bad):
        raise NonFiniteError(f"integrand is not finite at t={float(where[bad][0])!r}")


def _simpson_panels(hv, lo, hi, flo, fhi, tol_abs, max_depth=MAX_DEPTH) -> float:
    """Adaptive Simpson over a batch of closed panels, refined breadth-first."""
    mid = (lo + hi) / 2
    fm = hv(mid)
    _check_finite(fm, mid)
    whole = (hi - lo) / 6 * (flo + 4 * fm + fhi)
    eps = np.full(lo.shape, tol_abs / lo.size)
    accepted = []
    for _ in range(max_depth + 1):
        lm, rm = (lo + mid) / 2, (mid + hi) / 2
        f_lr = hv(np.concatenate([lm, rm]))
        _check_finite(f_lr, np.concatenate([lm, rm]))
        flm, frm = f_lr[: lo.size], f_lr[lo.size:]
        left = (mid - lo) / 6 * (flo + 4 * flm + fm)
        right = (hi - mid) / 6 * (fm + 4 * frm + fhi)
        err = left + right - whole
        done = (
            (np.abs(err) <= 15 * eps)
            | (np.abs(err) <= 64 * _EPS * (np.abs(left) + np.abs(right)))
            | (lm <= lo) | (rm >= hi)
        )
        accepted.append(left[done] + right[done] + err[done] / 15)
        keep = ~done
        if not np.any(keep):
            return math.fsum(np.concatenate(accepted))
        lo, mid, hi = lo[keep], mid[keep], hi[keep]
        flo, fm, fhi = flo[keep], fm[keep], fhi[keep]
        lm, rm, flm, frm = lm[keep], rm[keep], flm[keep], frm[keep]
        left, right, eps = left[keep], right[keep], eps[keep] / 2
        lo, mid, hi = np.concatenate([lo, mid]), np.concatenate([lm, rm]), np.concatenate([mid, hi])
        flo, fm, fhi = np.concatenate([flo, fm]), np.concatenate([flm, frm]), np.concatenate([fm, fhi])
        whole = np.concatenate([left, right])
        eps = np.concatenate([eps, eps])
    raise ConvergenceError(f"adaptive Simpson exceeded recursion depth {max_depth}")


def _regular(hv, lo: float, hi: float, tol: float) -> float:
    edges = np.linspace(lo, hi, _INITIAL_PANELS + 1)
    fe = hv(edges)
    _check_finite(fe, edges)
    # coarse composite estimate sets the absolute target tol*(1+|I|)
    mids = (edges[:-1] + edges[1:]) / 2
    fmid = hv(mids)
    _check_finite(fmid, mids)
    rough = math.fsum(np.diff(edges) / 6 * (fe[:-1] + 4 * fmid + fe[1:]))
    return _simpson_panels(hv, edges[:-1], edges[1:], fe[:-1], fe[1:], tol * (1 + abs(rough)))


def _singular_end(hv, end: float, inner: float, tol: float, scale: float) -> float:
    """Integral from a singular ``end`` to ``inner``.

    Panels shrink geometrically toward ``end``; the unresolved remainder is
    extrapolated from the ratio of successive panel integrals.
    """
    total = 0.0
    prev_panel = prev_estimate = None
    for k in range(MAX_DEPTH):
        outer = end + (inner - end) * 0.5**k
        near = end + (inner - end) * 0.5 ** (k + 1)
        if near == end:
            break
        lo, hi = min(near, outer), max(near, outer)
        panel = _regular(hv, lo, hi, tol)
        total += panel
        if prev_panel is not None:
            if panel == 0.0 and prev_panel == 0.0:
                return total
            r = panel / prev_panel if prev_panel != 0.0 else math.inf
            if 0 <= r < 1:
                estimate = total + panel * r / (1 - r)
                if prev_estimate is not None and abs(estimate - prev_estimate) <= tol * (
                    1 + abs(scale) + abs(estimate)
                ):
                    return estimate
                prev_estimate = estimate
        prev_panel = panel
    raise ConvergenceError(f"endpoint singularity at {end!r} did not resolve in {MAX_DEPTH} panels")


def integrate(h: Callable, interval: Interval, tol: float = 1e-10) -> float:
    """Adaptive Simpson integral of ``h`` over ``interval``.

    Targets ``|error| <= tol * (1 + |result|)``. An endpoint where ``h`` is
    not finite is approached through geometrically shrinking panels and never
    evaluated; the interior must be finite.
    """
    if not tol > 0:
        raise ParameterError(f"tol must be positive, got {tol}")
    hv = _vectorized(h)
    a, b = interval.a, interval.b
    end_vals = hv(np.array([a, b]))
    sing_a, sing_b = ~np.isfinite(end_vals)
    if not (sing_a or sing_b):
        return _regular(hv, a, b, tol)
    w = interval.length / 8
    lo = a + w if sing_a else a
    hi = b - w if sing_b else b
    core = _regular(hv, lo, hi, tol)
    total = core
    if sing_a:
        total += _singular_end(hv, a, lo, tol, core)
    if sing_b:
        total += _singular_end(hv, b, hi, tol, core)
    return total


# ---------------------------------------------------------------- kernels


@dataclass(frozen=True)
class Kernel:
    """Nonnegative integrable weight on an interval.

    ``mass`` is the closed-form integral when one is known.
    """

    domain: Interval
    evaluator: Callable
    label: str = "g"
    singular_endpoints: bool = False
    mass: float | None = None

    def __post_init__(self):
        probe = np.linspace(self.domain.a, self.domain.b, 1003)[1:-1]
        vals = _vectorized(self.evaluator)(probe)
        if np.any(vals < -1e-12):
            bad = probe[vals < -1e-12][0]
            raise ParameterError(f"kernel {self.label} is negative at t={bad!r}")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        y = _vectorized(self.evaluator)(np.atleast_1d(t))
        return float(y[0]) if t.ndim == 0 else y

    def symmetrized(self, t):
        """``g(t) + g(a + b - t)``."""
        return self(t) + self(self.domain.reflect(t))


class SineVariant(enum.Enum):
    FULL_SINE = "sine"
    SIN_PLUS_COS = "sinpluscos"


def uniform_kernel(domain: Interval) -> Kernel:
    return Kernel(domain, lambda t: np.ones_like(t), "uniform", False, domain.length)


def power_kernel(domain: Interval, alpha: float) -> Kernel:
    """``t**(alpha - 1)`` on a positive interval, mass ``(b**alpha - a**alpha)/alpha``."""
    alpha = float(alpha)
    if domain.a <= 0:
        raise DomainError("power kernel needs 0 < a")
    if alpha == 0:
        raise ParameterError("alpha must be nonzero; use log_limit_kernel for the limit")
    la, lb = math.log(domain.a), math.log(domain.b)
    # a**alpha * expm1(alpha*log(b/a)) / alpha keeps digits for small alpha
    mass = math.exp(alpha * la) * math.expm1(alpha * (lb - la)) / alpha
    return Kernel(
        domain,
        lambda t: np.power(t, alpha - 1),
        f"power:{alpha!r}",
        alpha < 1,
        mass,
    )


def log_limit_kernel(domain: Interval) -> Kernel:
    """``1 / (2 t (a+b-t))``, the small-alpha limit of the normalized power kernel.

    Its symmetrization is ``1/(t(a+b-t))`` and its mass is ``log(b/a)/(a+b)``.
    """
    a, b = domain.a, domain.b
    if a <= 0:
        raise DomainError("log-limit kernel needs 0 < a")
    c = a + b
    return Kernel(
        domain,
        lambda t: 0.5 / (t * (c - t)),
        "loglimit",
        False,
        math.log(b / a) / c,
    )


def sine_kernel(variant: SineVariant | str = SineVariant.FULL_SINE, domain: Interval | None = None) -> Kernel:
    """``sin t`` on ``[0, pi]`` (full) or ``[0, pi/2]`` (sin plus cos).

    On ``[0, pi/2]`` the symmetrization is ``sin t + cos t``. Another
    subinterval of ``[0, pi]`` may be passed as ``domain``.
    """
    variant = SineVariant(variant)
    if domain is None:
        top = math.pi if variant is SineVariant.FULL_SINE else math.pi / 2
        domain = Interval(0.0, top)
    if domain.a < 0 or domain.b > math.pi + 1e-12:
        raise DomainError(f"sine kernel must live inside [0, pi], got [{domain.a}, {domain.b}]")
    return Kernel(
        domain,
        np.sin,
        variant.value,
        False,
        math.cos(domain.a) - math.cos(domain.b),
    )


def kernel_from_samples(xs, ys, label: str = "pwl") -> Kernel:
    xs, ys = _validated_samples(xs, ys)
    return Kernel(Interval(xs[0], xs[-1]), lambda t: np.interp(t, xs, ys), label)


def kernel_from_csv(path) -> Kernel:
    xs, ys = read_samples_csv(path)
    return kernel_from_samples(xs, ys, f"file:{path}")


# ---------------------------------------------------------------- enclosures


@dataclass(frozen=True)
class Enclosure:
    lower: float
    middle: float
    upper: float
    kernel_mass: float

    def holds(self, atol=DEFAULT_ATOL, rtol=DEFAULT_RTOL) -> bool:
        return bool(
            holds(self.lower, self.middle, atol, rtol)
            and holds(self.middle, self.upper, atol, rtol)
            and self.kernel_mass >= -atol
        )

    def normalized(self) -> tuple[float, float, float]:
        """The chain divided by the kernel mass."""
        m = self.kernel_mass
        return self.lower / m, self.middle / m, self.upper / m


def weighted_enclosure(f: ConvexFunction, g: Kernel, tol: float = 1e-10) -> Enclosure:
    """``2 f(mid) M <= int (g(t) + g(a+b-t)) f(t) dt <= (f(a) + f(b)) M``, ``M = int g``."""
    if f.domain != g.domain:
        raise DomainMismatch(f"function on {f.domain} but kernel on {g.domain}")
    I = f.domain
    mass = integrate(g, I, tol)
    middle = integrate(lambda t: g.symmetrized(t) * f(t), I, tol)
    return Enclosure(
        lower=2 * f(I.midpoint) * mass,
        middle=middle,
        upper=(f(I.a) + f(I.b)) * mass,
        kernel_mass=mass,
    )


def symmetric_convolution_enclosure(f: ConvexFunction, g: Kernel, a: float, tol: float = 1e-10) -> Enclosure:
    """The enclosure on ``[-a, a]``, where the reflection is ``t -> -t``."""
    if not a > 0:
        raise DomainError(f"half-width must be positive, got {a}")
    sym = Interval(-a, a)
    if f.domain != sym or g.domain != sym:
        raise DomainError(f"function and kernel must both live on [-{a}, {a}]")
    return weighted_enclosure(f, g, tol)


def hh_recover(f: ConvexFunction, n_p: int = 10000, tol: float = 1e-10):
    """Hermite-Hadamard chain ``(f(mid), mean of f, (f(a)+f(b))/2)``.

    The mean is obtained twice: by the midpoint rule in the weight ``p``
    applied to ``f(pa+qb) + f(pb+qa)``, and by adaptive quadrature of ``f``.
    They must agree to ``10/n_p**2`` relative to the size of ``f``.
    """
    if n_p < 2:
        raise ParameterError("n_p must be at least 2")
    a, b = f.a, f.b
    p = (np.arange(n_p) + 0.5) / n_p
    q = 1.0 - p
    by_weights = math.fsum(f(p * a + q * b) + f(p * b + q * a)) / n_p / 2
    by_quadrature = integrate(f, f.domain, tol) / (b - a)
    ends = (f(a) + f(b)) / 2
    mid = f(f.domain.midpoint)
    scale = max(abs(by_quadrature), abs(f(a)), abs(f(b)), abs(mid))
    if abs(by_weights - by_quadrature) > 10 / n_p**2 * scale:
        raise CrossCheckError(
            f"weight-average mean {by_weights!r} disagrees with quadrature mean {by_quadrature!r}"
        )
    return mid, by_quadrature, ends
