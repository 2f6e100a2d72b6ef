"""Command-line entry point: ``hhfrac {constants,certify,verify,sweep,sandwich}``.

Exit status is 0 when nothing was violated, 2 when at least one record is
violated and 1 for configuration or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import bounds, harness
from .bounds import ParamSet
from .convexity import DEFAULT_BUDGET, DEFAULT_SEED, KINDS, ConvexityClass, certify, power_abs_derivative
from .errors import HHFracError
from .fracint import Interval

EXIT_OK, EXIT_ERROR, EXIT_VIOLATED = 0, 1, 2


def _add_point(p: argparse.ArgumentParser, theorem: bool = False) -> None:
    if theorem:
        p.add_argument("--theorem", required=True, choices=bounds.THEOREMS)
        p.add_argument("--function", required=True, help="corpus function name")
    p.add_argument("--theta", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("-m", type=float, default=1.0)
    p.add_argument("-a", type=float, required=True)
    p.add_argument("-b", type=float, required=True)
    p.add_argument("-q", type=float, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hhfrac", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="print the closed-form constants at one parameter point")
    _add_point(p)

    p = sub.add_parser("certify", help="certify |f'|^q (or f itself) against a convexity class")
    p.add_argument("--function", required=True)
    p.add_argument("--kind", choices=KINDS, default=KINDS[1])
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("-m", type=float, default=1.0)
    p.add_argument("-a", type=float, required=True)
    p.add_argument("-b", type=float, required=True)
    p.add_argument("-q", type=float, default=None, help="certify |f'|^q; omit to certify f")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("verify", help="check one theorem at one point")
    _add_point(p, theorem=True)

    p = sub.add_parser("sweep", help="run a grid sweep")
    p.add_argument("--config", help="TOML sweep configuration (defaults otherwise)")
    p.add_argument("--csv", help="CSV report path (overrides config)")
    p.add_argument("--json", help="JSON report path (overrides config)")

    p = sub.add_parser("sandwich", help="evaluate the fractional Hermite-Hadamard sandwich")
    p.add_argument("--function", required=True)
    p.add_argument("--theta", type=float, default=1.0)
    p.add_argument("-a", type=float, required=True)
    p.add_argument("-b", type=float, required=True)
    return parser


def _function(name: str):
    fns = harness.corpus_by_name()
    if name not in fns:
        raise ValueError(f"unknown function {name!r}; choose from {', '.join(fns)}")
    return fns[name]


def _print(obj) -> None:
    print(json.dumps(obj, indent=2))


def _constants(args) -> int:
    ps = ParamSet(args.theta, args.alpha, args.m, args.a, args.b, args.q)
    iv = ps.iv
    out = {"lambda": dict(zip(("lambda1", "lambda2", "lambda3"), bounds.lambda_consts(iv)))}
    if ps.p is not None:
        out["mu"] = dict(zip(("mu1", "mu2"), bounds.mu_consts(iv, ps.q)))
    consts = [bounds.c1(ps.theta, iv), bounds.c2(ps.theta, ps.alpha, iv), bounds.c3(ps.theta, ps.alpha, iv)]
    if ps.theta <= 1:
        consts += [bounds.c4(ps.theta, iv), bounds.c5(ps.theta, ps.alpha, iv), bounds.c6(ps.theta, ps.alpha, iv)]
    if ps.p is not None:
        consts += list(bounds.k_constants(ps.theta, ps.p, iv))
        consts += list(bounds.weighted_power_constants(ps.alpha, ps.q, iv))
        if ps.theta <= 1:
            consts += list(bounds.half_interval_constants(ps.theta, ps.p, iv))
    out["constants"] = [c.as_dict() for c in consts]
    _print(out)
    return EXIT_OK


def _certify(args) -> int:
    fn = _function(args.function)
    if args.kind == KINDS[0]:
        cls = ConvexityClass.harmonic()
    else:
        cls = ConvexityClass(args.kind, args.alpha, args.m)
    target = fn if args.q is None else power_abs_derivative(fn, args.q)
    res = certify(target, cls, Interval(args.a, args.b), args.budget, args.seed, fn_domain=fn.domain)
    _print(harness.cert_summary(res))
    return EXIT_OK


def _report(records) -> int:
    violated = sum(r.status == harness.VIOLATED for r in records)
    return EXIT_VIOLATED if violated else EXIT_OK


def _verify(args) -> int:
    ps = ParamSet(args.theta, args.alpha, args.m, args.a, args.b, args.q)
    rec = harness.verify_theorem(args.theorem, ps, _function(args.function))
    _print(rec.to_dict())
    return _report([rec])


def _sandwich(args) -> int:
    rec = harness.verify_sandwich(_function(args.function), args.theta, Interval(args.a, args.b))
    _print(rec.to_dict())
    return _report([rec])


def _sweep(args) -> int:
    cfg = harness.load_config(args.config) if args.config else harness.SweepConfig()
    csv_path = args.csv or cfg.csv_path
    json_path = args.json or cfg.json_path
    records = harness.run_sweep(cfg)
    if csv_path:
        harness.emit_report(records, "csv", csv_path)
    if json_path:
        harness.emit_report(records, "json", json_path)
    _print({"records": len(records), "status": harness.summarize(records)})
    count, found = harness.check_reductions(cfg.intervals, cfg.qs)
    if found:
        print(f"{len(found)} of {count} reduction checks disagree:", file=sys.stderr)
        for d in found:
            print(f"  {d}", file=sys.stderr)
    return _report(records)


_COMMANDS = {"constants": _constants, "certify": _certify, "verify": _verify,
             "sweep": _sweep, "sandwich": _sandwich}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except (HHFracError, ValueError, OSError) as exc:  # TOML decode errors are ValueErrors
        print(f"hhfrac: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
