"""Random convex test functions, brute-force grid oracles and verification campaigns."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .bounds import prop_z_links
from .convex_core import (
    DEFAULT_ATOL,
    DEFAULT_RTOL,
    ConvexFunction,
    HingeQuadratic,
    Interval,
    WeightPair,
    chain4_bounds,
    close,
    holds,
    lemma1_sides,
    midpoint_gap,
    quadratic_hinge,
    slack,
    weighted_gap,
)
from .errors import CrossCheckError, PropertyViolation, RangeError
from .quadrature import hh_recover


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 stream; identical across platforms for a given seed."""
    return np.random.Generator(np.random.PCG64(int(seed)))


@dataclass(frozen=True)
class ConvexGeneratorSpec:
    """Recipe for ``c0 + c1 x + q x^2 + sum w_k max(0, x - t_k)``."""

    n_hinges: int = 3
    quad_coeff_range: tuple[float, float] = (0.0, 1.0)
    hinge_weight_range: tuple[float, float] = (0.0, 2.0)
    affine_range: tuple[float, float] = (-1.0, 1.0)
    seed: int = 0

    def __post_init__(self):
        if self.n_hinges < 0:
            raise RangeError("n_hinges must be nonnegative")
        if not 0 <= self.seed < 2**64:
            raise RangeError("seed must be a 64-bit unsigned integer")
        for name in ("quad_coeff_range", "hinge_weight_range", "affine_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise RangeError(f"{name} is empty: ({lo}, {hi})")
        for name in ("quad_coeff_range", "hinge_weight_range"):
            if getattr(self, name)[0] < 0:
                raise RangeError(f"{name} must be nonnegative")


def generate_model(spec: ConvexGeneratorSpec, interval: Interval) -> HingeQuadratic:
    rng = make_rng(spec.seed)
    c0, c1 = rng.uniform(*spec.affine_range, size=2)
    q = rng.uniform(*spec.quad_coeff_range)
    knots = rng.uniform(interval.a, interval.b, size=spec.n_hinges)
    weights = rng.uniform(*spec.hinge_weight_range, size=spec.n_hinges)
    return HingeQuadratic(
        float(c0), float(c1), float(q),
        tuple(float(t) for t in knots), tuple(float(w) for w in weights),
    )


def generate_convex(spec: ConvexGeneratorSpec, interval: Interval) -> ConvexFunction:
    """Convex by construction; deterministic in ``(spec, interval)``."""
    return quadratic_hinge(interval, generate_model(spec, interval), f"quad_hinge:{spec.seed}")


@dataclass(frozen=True)
class PoolEntry:
    seed: int | None
    interval: Interval
    f: ConvexFunction
    spec: ConvexGeneratorSpec | None = None


def pool_specs(count: int, seed: int) -> list[ConvexGeneratorSpec]:
    """A varied, reproducible list of generator recipes.

    Every tenth recipe is affine, every tenth (offset five) a pure quadratic.
    """
    rng = make_rng(seed)
    specs = []
    for i in range(count):
        child = int(rng.integers(0, 2**63))
        if i % 10 == 3:
            specs.append(ConvexGeneratorSpec(0, (0.0, 0.0), (0.0, 0.0), (-2.0, 2.0), child))
        elif i % 10 == 8:
            specs.append(ConvexGeneratorSpec(0, (0.1, 2.0), (0.0, 0.0), (-1.0, 1.0), child))
        else:
            n = int(rng.integers(1, 6))
            specs.append(ConvexGeneratorSpec(n, (0.0, 1.0), (0.0, 2.0), (-1.0, 1.0), child))
    return specs


def function_pool(count: int, seed: int, positive: bool = False) -> list[PoolEntry]:
    """``count`` generated convex functions on random intervals.

    With ``positive`` every interval has ``a > 0``.
    """
    rng = make_rng(seed ^ 0x5EED)
    entries = []
    for spec in pool_specs(count, seed):
        if positive:
            a = float(rng.uniform(0.2, 3.0))
        else:
            a = float(rng.uniform(-3.0, 3.0))
        interval = Interval(a, a + float(rng.uniform(0.1, 4.0)))
        entries.append(PoolEntry(spec.seed, interval, generate_convex(spec, interval), spec))
    return entries


# ---------------------------------------------------------------- grid oracles


@dataclass(frozen=True)
class GridOracleResult:
    max_value: float
    argmax: tuple[float, float]
    endpoint_value: float
    grid_size: int

    def endpoint_is_max(self, atol=DEFAULT_ATOL, rtol=DEFAULT_RTOL) -> bool:
        """The corner value reaches the grid maximum within tolerance."""
        return holds(self.max_value, self.endpoint_value, atol, rtol)


def _grid_result(values: np.ndarray, grid: np.ndarray, endpoint_value: float, n: int):
    i, j = np.unravel_index(int(np.argmax(values)), values.shape)
    return GridOracleResult(
        float(values[i, j]), (float(grid[i]), float(grid[j])), float(endpoint_value), n
    )


def grid_max_F(f: ConvexFunction, n: int = 101) -> GridOracleResult:
    """Exhaustive maximum of the midpoint gap on an ``n x n`` grid, corners included."""
    if n < 2:
        raise RangeError("grid needs at least two points per side")
    g = f.domain.grid(n)
    s, t = np.meshgrid(g, g, indexing="ij")
    return _grid_result(midpoint_gap(f, s, t), g, midpoint_gap(f, f.a, f.b), n)


def grid_max_Fstar(f: ConvexFunction, w, n: int = 101) -> GridOracleResult:
    """Grid maximum of the weighted gap at fixed weights.

    ``endpoint_value`` is the gap at ``(x, y) = (a, b)``; nothing is asserted.
    """
    if n < 2:
        raise RangeError("grid needs at least two points per side")
    g = f.domain.grid(n)
    x, y = np.meshgrid(g, g, indexing="ij")
    return _grid_result(weighted_gap(f, w, x, y), g, weighted_gap(f, w, f.a, f.b), n)


@dataclass(frozen=True)
class FstarCounterexample:
    seed: int
    interval: tuple[float, float]
    p: float
    x: float
    y: float
    value: float
    endpoint_value: float
    midpoint_gap_ab: float


def fstar_counterexample_search(
    specs: Sequence[ConvexGeneratorSpec],
    p_grid: Sequence[float],
    n: int = 101,
    interval: Interval = Interval(0.0, 1.0),
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> list[FstarCounterexample]:
    """Grid search for weights where the weighted gap peaks away from ``(a, b)``.

    One record per ``(function, p)`` pair, holding the largest witness. Each
    is re-evaluated term by term before inclusion, and the global cap
    ``F*(p; x, y) <= F(a, b)`` is enforced on it.
    """
    if not specs or not p_grid:
        raise RangeError("need at least one spec and one weight")
    found = []
    for spec in specs:
        f = generate_convex(spec, interval)
        cap = midpoint_gap(f, f.a, f.b)
        for p in p_grid:
            w = WeightPair(p)
            res = grid_max_Fstar(f, w, n)
            if holds(res.max_value, res.endpoint_value, atol, rtol):
                continue
            x, y = res.argmax
            value = math.fsum([w.p * f(x), w.q * f(y), -f(w.p * x + w.q * y)])
            endpoint = math.fsum([w.p * f(f.a), w.q * f(f.b), -f(w.p * f.a + w.q * f.b)])
            if not value > endpoint + slack(value, endpoint, atol, rtol):
                continue
            if not holds(value, cap, atol, rtol):
                raise PropertyViolation(
                    f"seed {spec.seed}, p={p}: F*={value!r} exceeds F(a,b)={cap!r} at ({x}, {y})"
                )
            found.append(
                FstarCounterexample(spec.seed, (f.a, f.b), w.p, x, y, value, endpoint, cap)
            )
    return found


# ---------------------------------------------------------------- campaigns

CAMPAIGNS = ("prop-x", "prop-z", "lemma1", "chain4", "hh", "remark3")


def _base_record(entry: PoolEntry) -> dict:
    return {"seed": entry.seed, "interval": [entry.interval.a, entry.interval.b]}


def _prop_x(entry, rng, atol, rtol):
    res = grid_max_F(entry.f)
    ok = res.endpoint_is_max(atol, rtol)
    rec = _base_record(entry) | {
        "F_ab": res.endpoint_value,
        "grid_max": res.max_value,
        "argmax": list(res.argmax),
        "pass": ok,
    }
    return rec, None if ok else {"point": list(res.argmax), "F": res.max_value, "F_ab": res.endpoint_value}


def _prop_z(entry, rng, atol, rtol, draws=1000):
    f = entry.f
    p = rng.uniform(0, 1, draws)
    x = rng.uniform(f.a, f.b, draws)
    y = rng.uniform(f.a, f.b, draws)
    fstar, fxy, fab = prop_z_links(f, p, x, y)
    first = holds(fstar, fxy, atol, rtol)
    second = holds(fxy, fab, atol, rtol)
    ok = bool(np.all(first & second))
    rec = _base_record(entry) | {
        "F_ab": float(fab),
        "draws": draws,
        "max_fstar_minus_F": float(np.max(fstar - fxy)),
        "max_F": float(np.max(fxy)),
        "pass": ok,
    }
    witness = None
    if not ok:
        i = int(np.argmin(first & second))
        witness = {"p": float(p[i]), "x": float(x[i]), "y": float(y[i]),
                   "Fstar": float(fstar[i]), "F": float(fxy[i]), "F_ab": float(fab)}
    return rec, witness


def ordered_triples(rng, interval: Interval, k: int):
    """``k`` strictly increasing triples drawn uniformly from the interval."""
    pts = np.sort(rng.uniform(interval.a, interval.b, (k, 3)), axis=1)
    good = (pts[:, 0] < pts[:, 1]) & (pts[:, 1] < pts[:, 2])
    return pts[good, 0], pts[good, 1], pts[good, 2]


def _lemma1(entry, rng, atol, rtol, draws=500):
    x1, x2, x3 = ordered_triples(rng, entry.interval, draws)
    (l1, r1), (l2, r2) = lemma1_sides(entry.f, x1, x2, x3)
    ok_i = holds(l1, r1, atol, rtol)
    ok_ii = holds(r2, l2, atol, rtol)
    ok = bool(np.all(ok_i & ok_ii))
    rec = _base_record(entry) | {"triples": int(x1.size), "pass": ok}
    witness = None
    if not ok:
        i = int(np.argmin(ok_i & ok_ii))
        witness = {"x1": float(x1[i]), "x2": float(x2[i]), "x3": float(x3[i]),
                   "part_i": [float(l1[i]), float(r1[i])], "part_ii": [float(l2[i]), float(r2[i])]}
    return rec, witness


def _chain4(entry, rng, atol, rtol, draws=50):
    ps = np.concatenate([[0.0, 0.5, 1.0], rng.uniform(0, 1, draws)])
    lower, middle, upper = chain4_bounds(entry.f, ps)
    ok_chain = holds(lower, middle, atol, rtol) & holds(middle, upper, atol, rtol)
    ok = bool(np.all(ok_chain)) and close(middle[1], lower, 1e-12, 1e-12) \
        and close(middle[0], upper, 1e-12, 1e-12) and close(middle[2], upper, 1e-12, 1e-12)
    rec = _base_record(entry) | {"draws": int(ps.size), "lower": lower, "upper": upper, "pass": ok}
    witness = None
    if not ok:
        i = int(np.argmin(ok_chain)) if not np.all(ok_chain) else 0
        witness = {"p": float(ps[i]), "chain": [lower, float(middle[i]), upper]}
    return rec, witness


def _hh(entry, rng, atol, rtol):
    try:
        lower, middle, upper = hh_recover(entry.f)
    except CrossCheckError as exc:
        return _base_record(entry) | {"pass": False}, {"error": str(exc)}
    ok = holds(lower, middle, atol, rtol) and holds(middle, upper, atol, rtol)
    rec = _base_record(entry) | {"lower": lower, "middle": middle, "upper": upper, "pass": ok}
    return rec, None if ok else {"chain": [lower, middle, upper]}


_RUNNERS = {"prop-x": _prop_x, "prop-z": _prop_z, "lemma1": _lemma1, "chain4": _chain4, "hh": _hh}


def run_campaign(
    name: str,
    count: int,
    seed: int,
    entries: Sequence[PoolEntry] | None = None,
    atol: float = DEFAULT_ATOL,
    rtol: float = DEFAULT_RTOL,
) -> dict:
    """Run one verification suite and return a JSON-ready report.

    ``report["pass"]`` is false when any assertable property failed; the first
    failure is described under ``"failure"``. The ``remark3`` suite is
    exploratory and always passes.
    """
    if name not in CAMPAIGNS:
        raise RangeError(f"unknown campaign {name!r}; choose from {', '.join(CAMPAIGNS)}")
    if count < 1:
        raise RangeError("count must be at least 1")
    report = {"campaign": name, "count": count, "seed": seed, "atol": atol, "rtol": rtol}
    if name == "remark3":
        specs = pool_specs(count, seed)
        p_grid = [k / 10 for k in range(1, 10)]
        found = fstar_counterexample_search(specs, p_grid, 101, Interval(0.0, 1.0), atol, rtol)
        report |= {"p_grid": p_grid, "counterexamples": [asdict(r) for r in found], "pass": True}
        return report
    if entries is None:
        entries = function_pool(count, seed)
    rng = make_rng(seed)
    records, failure = [], None
    for entry in entries:
        rec, witness = _RUNNERS[name](entry, rng, atol, rtol)
        records.append(rec)
        if witness is not None and failure is None:
            failure = {"seed": entry.seed, "label": entry.f.label, "witness": witness}
    report |= {"records": records, "pass": failure is None}
    if failure is not None:
        report["failure"] = failure
    return report

