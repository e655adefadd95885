"""Command-line front end.

Usage
-----
convexgap bounds  --fn square --interval 0,1
convexgap enclose --fn exp --interval 1,2 --kernel power:0.5 --normalized
convexgap verify  prop-x --count 200 --seed 7 --out report.json

Exit codes: 0 all checks pass, 1 a property failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import convex_core as cc
from .bounds import t_opt
from .errors import ConvexGapError, NumericalError, PropertyViolation
from .harness import CAMPAIGNS, ConvexGeneratorSpec, PoolEntry, generate_convex, run_campaign
from .quadrature import (
    kernel_from_csv,
    log_limit_kernel,
    power_kernel,
    sine_kernel,
    uniform_kernel,
    weighted_enclosure,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FUNCTION_NAMES = "square, exp, abs_shift:<c>, neglog, quad_hinge:<seed>, affine:<c0>:<c1>, file:<path>"
KERNEL_NAMES = "uniform, power:<alpha>, loglimit, sine, sinpluscos, file:<path>"


def to_json(obj) -> str:
    """Deterministic JSON with floats written to 17 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format(obj, ".17g") if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    if hasattr(obj, "item"):
        return to_json(obj.item())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def build_function(name: str, interval: cc.Interval | None, allow_asserted: bool = False) -> cc.ConvexFunction:
    """Resolve a ``--fn`` value to a certified convex function."""
    kind, _, arg = name.partition(":")
    if kind == "file":
        f = cc.from_csv(arg, require_convex=not allow_asserted)
        if interval is not None and interval != f.domain:
            raise cc.DomainError(f"CSV covers {f.domain}, not {interval}")
        return f
    if interval is None:
        raise ConvexGapError("--interval is required for named functions")
    try:
        if kind == "square" and not arg:
            return cc.square(interval)
        if kind == "exp" and not arg:
            return cc.exponential(interval)
        if kind == "neglog" and not arg:
            return cc.neglog(interval)
        if kind == "abs_shift":
            return cc.abs_shift(interval, float(arg or 0.0))
        if kind == "affine":
            c0, _, c1 = arg.partition(":")
            return cc.affine(interval, float(c0), float(c1))
        if kind == "quad_hinge":
            return generate_convex(ConvexGeneratorSpec(seed=int(arg)), interval)
    except ValueError as exc:
        if isinstance(exc, ConvexGapError):
            raise
        raise ConvexGapError(f"bad parameter in --fn {name!r}: {exc}") from None
    raise ConvexGapError(f"unknown function {name!r}; choose from {FUNCTION_NAMES}")


def build_kernel(name: str, interval: cc.Interval):
    kind, _, arg = name.partition(":")
    if kind == "uniform" and not arg:
        return uniform_kernel(interval)
    if kind == "power":
        try:
            alpha = float(arg)
        except ValueError:
            raise ConvexGapError(f"bad alpha in --kernel {name!r}") from None
        return power_kernel(interval, alpha)
    if kind == "loglimit" and not arg:
        return log_limit_kernel(interval)
    if kind in ("sine", "sinpluscos") and not arg:
        return sine_kernel(kind, interval)
    if kind == "file":
        return kernel_from_csv(arg)
    raise ConvexGapError(f"unknown kernel {name!r}; choose from {KERNEL_NAMES}")


def _interval(args) -> cc.Interval | None:
    return cc.Interval.parse(args.interval) if args.interval else None


def _cmd_bounds(args) -> tuple[dict, int]:
    f = build_function(args.fn, _interval(args))
    rep = t_opt(f)
    dominance = cc.holds(rep.t_opt, rep.t_prime, args.atol, args.rtol)
    out = {
        "t_opt": rep.t_opt,
        "t_prime": rep.t_prime,
        "argmax_p": rep.argmax_p,
        "iterations": rep.iterations,
        "dominance": dominance,
    }
    return out, EXIT_OK if dominance else EXIT_FAIL


def _cmd_enclose(args) -> tuple[dict, int]:
    f = build_function(args.fn, _interval(args))
    g = build_kernel(args.kernel, f.domain)
    enc = weighted_enclosure(f, g)
    ok = enc.holds(args.atol, args.rtol)
    out = {
        "lower": enc.lower,
        "middle": enc.middle,
        "upper": enc.upper,
        "kernel_mass": enc.kernel_mass,
        "holds": ok,
    }
    if args.normalized:
        lo, mid, hi = enc.normalized()
        out["normalized"] = {"lower": lo, "middle": mid, "upper": hi}
    return out, EXIT_OK if ok else EXIT_FAIL


def _cmd_verify(args) -> tuple[dict, int]:
    if args.count < 1:
        raise ConvexGapError("--count must be at least 1")
    entries = None
    if args.fn:
        f = build_function(args.fn, _interval(args), allow_asserted=args.allow_asserted)
        entries = [PoolEntry(None, f.domain, f)]
    report = run_campaign(args.campaign, args.count, args.seed, entries, args.atol, args.rtol)
    return report, EXIT_OK if report["pass"] else EXIT_FAIL


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="convexgap", description="Convex gap bounds and enclosures.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--atol", type=float, default=cc.DEFAULT_ATOL)
    common.add_argument("--rtol", type=float, default=cc.DEFAULT_RTOL)
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--interval", help="a,b")
    sp = p.add_subparsers(dest="cmd", required=True)

    pb = sp.add_parser("bounds", parents=[common], help="global Jensen-gap bounds")
    pb.add_argument("--fn", required=True, help=FUNCTION_NAMES)
    pb.set_defaults(func=_cmd_bounds)

    pe = sp.add_parser("enclose", parents=[common], help="weighted integral enclosure")
    pe.add_argument("--fn", required=True, help=FUNCTION_NAMES)
    pe.add_argument("--kernel", required=True, help=KERNEL_NAMES)
    pe.add_argument("--normalized", action="store_true", help="also print the chain divided by the kernel mass")
    pe.set_defaults(func=_cmd_enclose)

    pv = sp.add_parser("verify", parents=[common], help="property campaign over generated functions")
    pv.add_argument("campaign", choices=CAMPAIGNS)
    pv.add_argument("--count", type=int, default=20)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--fn", help="check this function instead of generated ones")
    pv.add_argument("--allow-asserted", action="store_true",
                    help="admit a CSV without the convexity certificate")
    pv.set_defaults(func=_cmd_verify)
    return p


def _join_negative_interval(argv: list[str]) -> list[str]:
    # "--interval -1,1" would otherwise read "-1,1" as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--interval":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--interval={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = make_parser().parse_args(_join_negative_interval(argv))
    try:
        out, code = args.func(args)
    except (ConvexGapError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, PropertyViolation) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = to_json(out) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
