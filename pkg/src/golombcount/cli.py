"""Command-line entry point: count, sweep, verify, fit.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .analysis import InsufficientDataError, fit_error_exponent, summarize
from .characters import InvalidCharacterError
from .config import load_config
from .counting import BudgetExceededError, TargetTuple, TupleError, count_breakdown, sigma_split
from .ntcore import NotAnOddPrimeError, build_context
from .report import load_records, report
from .sweep import parse_policy, sweep
from .verify import verify

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def _shifts(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(a) for a in text.split(",") if a.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"shifts must be comma-separated integers, got {text!r}")


def _policy(text: str):
    try:
        return parse_policy(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="golombcount", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON config file; command-line flags take precedence")
    parser.add_argument("--workers", type=int, help="worker processes (env GOLOMBCOUNT_WORKERS)")
    parser.add_argument("--budget", type=int, help="max character evaluations per decomposition")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="N(a_1..a_r; p) for one prime, as JSON")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--shifts", type=_shifts, required=True)
    c.add_argument("--decompose", action="store_true", help="also compute sigma1/sigma2")
    c.add_argument("--method", choices=["grouped", "characters"])

    s = sub.add_parser("sweep", help="records for every prime in a range")
    s.add_argument("--min", type=int, required=True, dest="lo")
    s.add_argument("--max", type=int, required=True, dest="hi")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--policy", type=_policy, default="canonical",
                   help="canonical | fixed:<a1,a2,...> | random:<count>")
    s.add_argument("--seed", type=int)
    s.add_argument("--decompose", action="store_true")
    s.add_argument("--out", required=True)
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--epsilon", type=float)

    v = sub.add_parser("verify", help="run a property suite over a prime range")
    v.add_argument("--kind", choices=["indicator", "weil", "decomposition", "all"], required=True)
    v.add_argument("--min", type=int, required=True, dest="lo")
    v.add_argument("--max", type=int, required=True, dest="hi")
    v.add_argument("--seed", type=int)
    v.add_argument("--samples", type=int, help="Weil configurations per prime and factor count")

    f = sub.add_parser("fit", help="fit log|error| against log p for a saved sweep")
    f.add_argument("--in", required=True, dest="src")
    f.add_argument("--epsilon", type=float)
    return parser


def _cmd_count(args, cfg) -> int:
    ctx = build_context(args.p)
    tup = TargetTuple(args.p, args.shifts)
    if args.decompose:
        b = sigma_split(tup, ctx, budget=cfg.budget, method=args.method or cfg.decomposition_method)
    else:
        b = count_breakdown(tup, ctx)
    print(json.dumps(b.to_dict(), indent=2))
    return EXIT_OK


def _cmd_sweep(args, cfg) -> int:
    records = sweep(args.lo, args.hi, args.r, args.policy, cfg, decompose=args.decompose)
    summary = summarize(records, cfg.epsilon)
    fit = None
    try:
        fit = fit_error_exponent(records, cfg.epsilon)
    except InsufficientDataError:
        pass
    extra = {k: v for k, v in summary.items() if k != "fit"}
    report(records, fit, args.format, args.out, cfg, extra_meta={"summary": extra})
    print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    return EXIT_OK


def _cmd_verify(args, cfg) -> int:
    results = verify(args.kind, args.lo, args.hi, cfg)
    for summary in results:
        print(summary.line())
    return EXIT_OK if all(s.passed for s in results) else EXIT_FAILED


def _cmd_fit(args, cfg) -> int:
    records = load_records(args.src)
    out = summarize(records, cfg.epsilon)
    if out["fit"] is None:
        raise InsufficientDataError("need nonzero errors at two or more distinct primes")
    print(json.dumps(out, indent=2))
    return EXIT_OK


_COMMANDS = {"count": _cmd_count, "sweep": _cmd_sweep, "verify": _cmd_verify, "fit": _cmd_fit}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(
            args.config,
            workers=args.workers,
            budget=args.budget,
            seed=getattr(args, "seed", None),
            epsilon=getattr(args, "epsilon", None),
            weil_samples=getattr(args, "samples", None),
        )
        return _COMMANDS[args.command](args, cfg)
    except (NotAnOddPrimeError, TupleError, InvalidCharacterError, BudgetExceededError,
            InsufficientDataError, OSError, ValueError) as exc:
        print(f"golombcount: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
