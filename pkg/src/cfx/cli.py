"""Command-line front end: classify groups, run verification suites, tables.

Exit codes: 0 pass, 1 verification failure, 2 input error, 3 precondition
violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .boundary import TangentFrame
from .flat import ComplexSpec, check_exactness
from .groups import GroupSpec, classify
from .ma import (Region, cln_experiment, convergence_experiment,
                 key_identity_check, stokes_check)
from .poly import Poly
from .randgen import SectionGenerator
from .reports import dumps
from . import verify as suites

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3

MAX_N = 3


def _load_group(args) -> GroupSpec:
    if getattr(args, "file", None):
        with open(args.file, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return GroupSpec.from_json(data)
    name = getattr(args, "group", None) or "rightQH"
    return GroupSpec.named(name, args.n)


def _emit(args, payload) -> None:
    if args.format == "csv":
        text = _to_csv(payload)
    else:
        text = dumps(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _to_csv(payload) -> str:
    rows = payload if isinstance(payload, list) else payload.get("levels") or [payload]
    if not isinstance(rows, list):
        rows = [rows]
    keys = sorted({k for row in rows for k in row}) if rows else []
    lines = [",".join(keys)]
    for row in rows:
        lines.append(",".join(str(row.get(k, "")) for k in keys))
    return "\n".join(lines)


def cmd_classify(args) -> int:
    try:
        group = _load_group(args)
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    result = classify(group, condition_h_mode=args.condition_h)
    _emit(args, result)
    if not result["routes_agree"]:
        print("internal inconsistency: classification routes disagree", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_PASS


def cmd_verify(args) -> int:
    if args.n > MAX_N:
        print(f"input error: n={args.n} exceeds the configured limit {MAX_N}",
              file=sys.stderr)
        return EXIT_INPUT
    reports = []
    if args.target == "flat":
        reports.append(suites.flat_composition_suite(args.n, args.k, args.trials,
                                                     args.seed, args.degree))
        reports.append(suites.flat_tuple_equivalence_suite(args.n, args.k,
                                                           max(1, args.trials // 4),
                                                           args.seed + 1, args.degree))
    else:
        try:
            group = _load_group(args)
        except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
            print(f"input error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        frame = TangentFrame(group)
        wanted = args.check
        if wanted in ("composition", "all"):
            reports.append(suites.boundary_composition_suite(
                group, args.k, args.trials, args.seed, min(args.degree, 2), frame))
        if wanted in ("anticommute", "all"):
            reports.append(suites.anticommute_suite(group, args.trials, args.seed,
                                                    frame))
        if wanted in ("bracket", "all"):
            reports.append(suites.bracket_suite(group, frame))
        if wanted in ("hodge", "all") and frame.right_type and args.k >= 1:
            reports.append(suites.hodge_suite(group, args.k, args.trials,
                                              args.seed, frame))
        if wanted in ("subcomplex",) and frame.right_type:
            reports.append(suites.subcomplex_suite(group, args.k, args.trials,
                                                   args.seed, min(args.degree, 2), frame))
    if not reports:
        print("input error: the requested check needs a right-type group",
              file=sys.stderr)
        return EXIT_INPUT
    payload = [r.to_dict() for r in reports]
    _emit(args, payload)
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def cmd_symbol(args) -> int:
    if args.n > MAX_N:
        print(f"input error: n={args.n} exceeds the configured limit {MAX_N}",
              file=sys.stderr)
        return EXIT_INPUT
    spec = ComplexSpec(args.n, args.k)
    vectors = []
    if args.v:
        try:
            vec = [Fraction(part) for part in args.v.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            print(f"input error: bad covector: {exc}", file=sys.stderr)
            return EXIT_INPUT
        if len(vec) != 4 * (args.n + 1):
            print(f"input error: covector needs {4 * (args.n + 1)} entries",
                  file=sys.stderr)
            return EXIT_INPUT
        if not any(vec):
            print("input error: covector must be nonzero", file=sys.stderr)
            return EXIT_INPUT
        vectors.append(vec)
    gen = SectionGenerator(args.seed)
    for t in range(args.trials):
        vectors.append(gen.spawn(t).rational_vector(4 * (args.n + 1)))
    if not vectors:
        print("input error: provide --v or --trials > 0", file=sys.stderr)
        return EXIT_INPUT
    results = [check_exactness(spec, v) for v in vectors]
    payload = {
        "n": args.n, "k": args.k, "seed": args.seed,
        "dims": results[0]["dims"],
        "levels": results[0]["levels"],
        "all_exact": all(r["exact"] for r in results),
        "vectors_checked": len(vectors),
    }
    _emit(args, payload)
    return EXIT_PASS if payload["all_exact"] else EXIT_FAIL


def cmd_ma(args) -> int:
    try:
        group = _load_group(args)
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    frame = TangentFrame(group)
    if not frame.right_type:
        print("precondition violation: the wedge-power operator needs a "
              "right-type group", file=sys.stderr)
        return EXIT_PRECONDITION
    naxes = 4 * group.n + 3
    half = Fraction(args.halfwidth)
    K = Region.cube(naxes, half, args.resolution)
    L = Region.cube(naxes, half / 2, args.resolution)
    gen = SectionGenerator(args.seed)
    if args.u:
        with open(args.u, "r", encoding="utf-8") as fh:
            us = [Poly.from_json(item) for item in json.load(fh)]
    else:
        us = [gen.spawn(i).psh_quadratic(frame.vars, 4 * group.n)
              for i in range(args.power)]
    payload = {"seed": args.seed, "n": group.n, "power": args.power}
    if group.n == len(us):
        payload["key_identity"] = key_identity_check(us, frame)
    payload["cln"] = cln_experiment(us[:args.power], K, L, frame)
    from .exterior import from_hat_components
    hgen = gen.spawn(1001)
    h = hgen.poly(frame.vars, degree=3)
    T = from_hat_components(frame.dim, frame.vars,
                            [hgen.spawn(i).poly(frame.vars, degree=3)
                             for i in range(frame.dim)])
    payload["stokes"] = stokes_check(h, T, K, frame)
    if group.n == 2 and args.convergence:
        q = gen.spawn(7).psh_quadratic(frame.vars, 8)
        payload["convergence"] = convergence_experiment(q, frame, L, steps=args.convergence)
    _emit(args, payload)
    checks = [payload["cln"]["pass"], payload["stokes"]["pass"]]
    if "key_identity" in payload:
        checks.append(payload["key_identity"]["pass"])
    if "convergence" in payload:
        checks.append(payload["convergence"]["pass"])
    return EXIT_PASS if all(checks) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfx",
        description="exact verification engine for quaternionic differential complexes")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, default=2)
        p.add_argument("--k", type=int, default=1)
        p.add_argument("--seed", type=int, default=1)
        p.add_argument("--trials", type=int, default=10)
        p.add_argument("--degree", type=int, default=3)
        p.add_argument("--group", choices=["rightQH", "leftQH", "abelian"])
        p.add_argument("--file", help="group JSON file")
        p.add_argument("--out")
        p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("classify", help="classify a group")
    common(p)
    p.add_argument("--condition-h", choices=["exact", "sampled"], default="sampled")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("target", choices=["flat", "boundary"])
    common(p)
    p.add_argument("--check", default="all",
                   choices=["all", "composition", "anticommute", "bracket",
                            "hodge", "subcomplex"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("symbol", help="frozen-coefficient rank/exactness table")
    common(p)
    p.add_argument("--v", help="comma-separated rational covector")
    p.set_defaults(func=cmd_symbol, trials=0)

    p = sub.add_parser("ma", help="wedge-power operator experiments")
    common(p)
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--halfwidth", default="1/2")
    p.add_argument("--resolution", type=int, default=4)
    p.add_argument("--u", help="JSON file with a list of polynomial inputs")
    p.add_argument("--convergence", type=int, default=0,
                   help="steps for the approximation-mass experiment")
    p.set_defaults(func=cmd_ma)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        message = str(exc)
        if "right-type" in message:
            print(f"precondition violation: {message}", file=sys.stderr)
            return EXIT_PRECONDITION
        print(f"input error: {message}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
