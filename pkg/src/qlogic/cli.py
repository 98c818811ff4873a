"""Command line entry point.

    qlogic check --algebra "C(3) + R(4)" [--samples N] [--seed S]
                 [--tol-override A=1e-8] [--only A,C,D] [--format json|text]
    qlogic counterexample spin --n 3 [--u1 1,0,0] [--value 0.9]
    qlogic interference --algebra "C(4)" --order 3|2 [--search]

Exit status: 0 all checks pass, 1 some check fails, 2 usage or parse error.
Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .interference import max_abs, search_I2, sweep_I3, I3_TOL
from .jordan import Algebra
from .parser import SpecError, parse_algebra_spec
from .spin import verify_lift, verify_nonuniqueness
from .suite import CHECKS, DEFAULT_SAMPLES, DEFAULT_SEED, SuiteConfig, emit_report, run_postulate_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _default_seed() -> int:
    env = os.environ.get("QLOGIC_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise SystemExit(f"QLOGIC_SEED must be an integer, got {env!r}")


def _vector(text):
    try:
        return np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _tol_override(text):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    if name not in CHECKS:
        raise argparse.ArgumentTypeError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
    try:
        tol = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance must be a number, got {value!r}")
    if not tol > 0:
        raise argparse.ArgumentTypeError("tolerance must be > 0")
    return name, tol


def _only(text):
    names = tuple(n.strip() for n in text.split(",") if n.strip())
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown checks {unknown}; choose from {', '.join(CHECKS)}")
    return names


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qlogic", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run the postulate suite on an algebra")
    check.add_argument("--algebra", required=True, help='e.g. "C(3) + R(4) + O3"')
    check.add_argument("--samples", type=_positive_int, default=DEFAULT_SAMPLES)
    check.add_argument("--seed", type=int, default=None, help=f"default {DEFAULT_SEED} or $QLOGIC_SEED")
    check.add_argument("--tol-override", type=_tol_override, action="append", default=[], metavar="NAME=VALUE")
    check.add_argument("--only", type=_only, default=None, metavar="CHECK,...")
    check.add_argument("--format", choices=("json", "text"), default="text")
    check.add_argument("--timings", action="store_true", help="include wall times in json output")

    cex = sub.add_parser("counterexample", help="non-unique conditioning on a spin factor")
    cex.add_argument("family", choices=("spin",))
    cex.add_argument("--n", type=int, required=True, help="spin(n), n >= 2")
    cex.add_argument("--u0", type=_vector, default=None)
    cex.add_argument("--u1", type=_vector, default=None)
    cex.add_argument("--value", type=float, default=0.9)
    cex.add_argument("--samples", type=_positive_int, default=200, help="sampled directions")
    cex.add_argument("--seed", type=int, default=None)
    cex.add_argument("--lift", default=None, metavar="SPEC", help="also verify inside this direct sum")
    cex.add_argument("--format", choices=("json", "text"), default="text")

    inter = sub.add_parser("interference", help="second/third-order interference sweep")
    inter.add_argument("--algebra", required=True)
    inter.add_argument("--order", type=int, choices=(2, 3), required=True)
    inter.add_argument("--search", action="store_true", help="order 2: search for the largest |I2|")
    inter.add_argument("--configs", type=_positive_int, default=DEFAULT_SAMPLES)
    inter.add_argument("--seed", type=int, default=None)
    inter.add_argument("--format", choices=("json", "text"), default="text")
    return parser


def _dump(obj, fmt, out):
    if fmt == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
    else:
        for key, value in obj.items():
            out.write(f"{key:<20} {value}\n")


def cmd_check(args, out) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    config = SuiteConfig(args.algebra, args.samples, seed, dict(args.tol_override), args.only)
    report = run_postulate_suite(config)
    out.write(emit_report(report, args.format, timings=args.timings))
    for c in report.checks:
        if not c.passed:
            print(f"check {c.name} failed: {c.detail}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_counterexample(args, out) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    rep = verify_nonuniqueness(args.n, args.u0, args.u1, args.value, args.samples, seed)
    result = rep.summary()
    ok = rep.counterexample and rep.nu_not_density
    if args.lift is not None:
        lift = verify_lift(Algebra(parse_algebra_spec(args.lift)), new_value=args.value, seed=seed)
        result["lift"] = {
            "spec": lift.spec,
            "mu(e)": lift.mu_at_e,
            "nu(e)": lift.nu_at_e,
            "gap": lift.gap,
            "frame_violation": lift.frame_violation,
            "frames": lift.frames,
            "passed": lift.passed,
        }
        ok = ok and lift.passed
    result["passed"] = ok
    _dump(result, args.format, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_interference(args, out) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    alg = Algebra(parse_algebra_spec(args.algebra))
    if args.order == 3:
        if args.search:
            print("--search only applies to --order 2", file=sys.stderr)
            return EXIT_USAGE
        reports = sweep_I3(alg, args.configs, seed)
        worst = max_abs(reports)
        ok = worst <= I3_TOL
        result = {"spec": str(alg.descriptor), "order": 3, "configs": len(reports), "max_abs_I3": worst,
                  "tolerance": I3_TOL, "passed": ok}
        _dump(result, args.format, out)
        return EXIT_OK if ok else EXIT_FAIL
    best = search_I2(alg, args.configs, seed)
    result = {"spec": str(alg.descriptor), "order": 2, "configs": args.configs, "max_abs_I2": abs(best.value),
              "best_config": best.seed, "search": bool(args.search)}
    _dump(result, args.format, out)
    return EXIT_OK


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "check":
            return cmd_check(args, out)
        if args.command == "counterexample":
            return cmd_counterexample(args, out)
        return cmd_interference(args, out)
    except SpecError as exc:
        print(f"qlogic: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"qlogic: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
