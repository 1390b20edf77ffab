"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 usage or cost guard,
3 integrity failure, 4 numerical non-convergence.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from typing import Sequence

from . import __version__
from .asymptotics import (
    ConvergenceError,
    PrecisionConfig,
    PrecisionError,
    arctic_point,
    boundary_cdf_estimate,
    ellipse_residual,
    tw_convergence_probe,
    tw_f2,
)
from .conjecture import IntegrityError, conjecture_count
from .frozen_oracle import BRUTE_MAX_N, brute_force_frozen, count_frozen
from .mir import DEFAULT_N_MAX, DEFAULT_S_MAX, MirGuardError, mir_count
from .results import ResultCache, ResultRecord
from .verify import run_verify

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INTEGRITY, EXIT_NUMERIC = 0, 1, 2, 3, 4


class GuardError(ValueError):
    pass


def _compute(method: str, n: int, s: int, args) -> int:
    if n < 1 or not 0 <= s <= n:
        raise GuardError(f"need n >= 1 and 0 <= s <= n, got n={n}, s={s}")
    if method == "oracle":
        return count_frozen(n, s)
    if method == "conjecture":
        if s == 0:
            raise GuardError("the determinant formula needs s >= 1")
        return conjecture_count(n, s)
    if method == "mir":
        if s == 0:
            raise GuardError("the constant-term route needs s >= 1")
        return mir_count(n, s, s_max=args.s_max, n_max=args.n_max)
    if method == "brute":
        if n > BRUTE_MAX_N:
            raise GuardError(f"brute force is limited to n <= {BRUTE_MAX_N}")
        return brute_force_frozen(n, s)
    raise GuardError(f"unknown method {method!r}")


def _emit_rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=1)
        out.write("\n")
        return
    if not rows:
        return
    w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


def cmd_count(args) -> int:
    cache = None if args.no_cache else ResultCache(args.cache_dir)
    rec = None
    if cache is not None and not args.recompute:
        rec = cache.get(args.method, args.n, args.s)
    if rec is None:
        t0 = time.perf_counter()
        value = _compute(args.method, args.n, args.s, args)
        rec = ResultRecord.of(args.method, args.n, args.s, value, time.perf_counter() - t0)
        if cache is not None:
            cache.append(rec)
    if args.format == "plain":
        print(rec.value)
    else:
        _emit_rows([{"n": rec.n, "s": rec.s, "method": rec.method, "value": rec.value}],
                   args.format, sys.stdout)
    return EXIT_OK


def cmd_verify(args) -> int:
    golden_only = args.golden_only or args.conjecture_vs_golden
    progress = (lambda msg: print(msg, file=sys.stderr)) if args.verbose else None
    t0 = time.perf_counter()
    report = run_verify(args.n_max, golden_only=golden_only, slow=args.slow, progress=progress)
    if args.format == "text":
        for line in report.lines():
            print(line)
    else:
        rows = [{"n": c.n, "s": c.s, "method": m, "value": str(v)}
                for c in report.cells for m, v in sorted(c.values.items())]
        _emit_rows(rows, args.format, sys.stdout)
    print(f"elapsed {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    if not report.passed:
        print(f"first failure: {report.first_failure()}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _config(args) -> PrecisionConfig:
    return PrecisionConfig(bits=getattr(args, "bits", None))


def cmd_asymp(args) -> int:
    cfg = _config(args)
    rows: list[dict] = []
    if args.sub == "arctic":
        k = args.samples
        for idx in range(k):
            # log-spaced over [1, omega_max]
            omega = math.exp(math.log(args.omega_max) * idx / max(1, k - 1))
            p = arctic_point(omega)
            rows.append({"omega": repr(p.omega), "x": repr(p.x), "y": repr(p.y),
                         "residual": repr(ellipse_residual(p.x, p.y))})
    elif args.sub == "cdf":
        s_values = args.s or list(range(1, args.n + 1))
        for s in s_values:
            est = boundary_cdf_estimate(args.n, s, cfg, method=args.method)
            rows.append({"n": args.n, "s": s, "method": "cdf", "value": repr(est.value),
                         "error": repr(est.error)})
    elif args.sub == "tw":
        k = args.points
        for idx in range(k):
            sigma = args.sigma_min + (args.sigma_max - args.sigma_min) * idx / max(1, k - 1)
            rows.append({"sigma": repr(sigma), "f2": repr(tw_f2(sigma, cfg))})
    elif args.sub == "probe":
        n_list = [int(v) for v in args.n.split(",")]
        for p in tw_convergence_probe(n_list, args.sigma, cfg):
            rows.append({"sigma": repr(p.sigma), "n": p.n, "s_scaled": p.s_scaled,
                         "p_boundary": repr(p.p_boundary), "f2": repr(p.f2), "gap": repr(p.gap)})
    _emit_rows(rows, args.format, sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frozenasm", description="Frozen-corner enumeration of alternating sign matrices."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="compute B(n, s) by one method")
    c.add_argument("--method", choices=("oracle", "conjecture", "mir", "brute"), default="conjecture")
    c.add_argument("-n", type=int, required=True)
    c.add_argument("-s", type=int, required=True)
    c.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    c.add_argument("--recompute", action="store_true", help="ignore cached values")
    c.add_argument("--cache-dir", default=None, help="overrides $FROZENASM_CACHE_DIR")
    c.add_argument("--s-max", type=int, default=DEFAULT_S_MAX, help="mir guard on s")
    c.add_argument("--n-max", type=int, default=DEFAULT_N_MAX, help="mir guard on n")
    c.add_argument("--format", choices=("plain", "csv", "json"), default="plain")
    c.set_defaults(func=cmd_count)

    v = sub.add_parser("verify", help="cross-check all routes and reference tables")
    v.add_argument("--n-max", type=int, default=8)
    v.add_argument("--golden-only", action="store_true",
                   help="only compare the determinant formula against the embedded tables")
    v.add_argument("--conjecture-vs-golden", action="store_true",
                   help="same as --golden-only")
    v.add_argument("--slow", action="store_true", help="run the oracle up to n = 16")
    v.add_argument("--format", choices=("text", "csv", "json"), default="text")
    v.add_argument("-v", "--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("asymp", help="large-n numerics")
    asub = a.add_subparsers(dest="sub", required=True)
    arc = asub.add_parser("arctic", help="samples of the arctic curve")
    arc.add_argument("--samples", type=int, default=20)
    arc.add_argument("--omega-max", type=float, default=1e6)
    cdf = asub.add_parser("cdf", help="P_n(xi > s) table")
    cdf.add_argument("-n", type=int, required=True)
    cdf.add_argument("-s", type=int, action="append", help="repeatable; default all s")
    cdf.add_argument("--method", choices=("float", "exact"), default="float")
    cdf.add_argument("--bits", type=int, default=None)
    tw = asub.add_parser("tw", help="F2 on a grid")
    tw.add_argument("--sigma-min", type=float, default=-6.0)
    tw.add_argument("--sigma-max", type=float, default=6.0)
    tw.add_argument("--points", type=int, default=25)
    pr = asub.add_parser("probe", help="boundary CDF against F2 along n")
    pr.add_argument("--sigma", type=float, default=0.0)
    pr.add_argument("--n", default="50,100,200", help="comma-separated sizes")
    pr.add_argument("--bits", type=int, default=None)
    for p in (arc, cdf, tw, pr):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
    a.set_defaults(func=cmd_asymp)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GuardError, MirGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrityError as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except (PrecisionError, ConvergenceError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
