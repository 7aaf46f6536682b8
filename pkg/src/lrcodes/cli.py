"""Command line: construct, analyze, f4, sweep, simulate.

Exit codes: 0 success, 1 other failure, 2 I/O or input error,
3 code below the almost-optimal range, 4 infeasible parameters.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import codefile
from .analysis import DEFAULT_BUDGET, BudgetExceeded, OracleDisagreement, analyze, sweep
from .construction import ConstructionError, construct, feasibility, minimum_guaranteed_q
from .f4family import OperatorMatrix, verify_family, verify_operator_code
from .repairsim import simulate

EXIT_OK, EXIT_FAIL, EXIT_IO, EXIT_BELOW, EXIT_INFEASIBLE = 0, 1, 2, 3, 4


def _budget(text: str) -> int:
    text = text.strip()
    if "^" in text or "**" in text:
        base, exp = text.replace("**", "^").split("^")
        return int(base) ** int(exp)
    return int(text)


def _verdict_exit(verdict: str) -> int:
    if verdict in ("optimal", "almost-optimal"):
        return EXIT_OK
    if verdict == "below":
        return EXIT_BELOW
    return EXIT_FAIL


def _emit(args, report_json: dict, text: str):
    if args.json:
        print(json.dumps(report_json))
    else:
        print(text)


def cmd_construct(args) -> int:
    try:
        verdict = feasibility(args.n, args.k, args.r)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    if verdict.mode == "infeasible":
        print(f"infeasible: {verdict.reason}")
        return EXIT_INFEASIBLE
    q = args.q or minimum_guaranteed_q(args.n, args.k)
    try:
        code = construct(args.n, args.k, args.r, q, args.seed, args.max_attempts)
        rep = analyze(code, args.budget)
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except BudgetExceeded as exc:
        print(f"error: {exc} (raise --budget)", file=sys.stderr)
        return EXIT_FAIL
    if args.out:
        try:
            codefile.save(codefile.CodeFile(code, provenance={"seed": args.seed}), args.out)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    out = rep.to_json() | {"q": q, "mode": verdict.mode}
    _emit(args, out, f"{verdict.mode} construction over GF({q})\n{rep.summary()}")
    return _verdict_exit(rep.verdict)


def cmd_analyze(args) -> int:
    try:
        cf = codefile.load(args.path)
    except (OSError, ValueError) as exc:
        print(f"error: cannot read {args.path}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        if isinstance(cf.code, OperatorMatrix):
            if cf.code.family != "custom":
                rep = verify_family(cf.code.family, cf.code.i, args.budget)
            else:
                rep = verify_operator_code(cf.code, args.budget)
        else:
            rep = analyze(cf.code, args.budget)
    except BudgetExceeded as exc:
        print(f"error: {exc} (raise --budget)", file=sys.stderr)
        return EXIT_FAIL
    except OracleDisagreement as exc:
        print(f"error: oracle disagreement: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = rep.summary()
    if rep.gap > 0:
        text += f"\n  gap to d_opt: {rep.gap}"
    _emit(args, rep.to_json(), text)
    return _verdict_exit(rep.verdict)


def cmd_f4(args) -> int:
    try:
        rep = verify_family(args.family, args.i, args.budget)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BudgetExceeded as exc:
        print(f"error: {exc} (raise --budget)", file=sys.stderr)
        return EXIT_FAIL
    if args.out:
        from .f4family import family_matrix
        cf = codefile.CodeFile(family_matrix(args.family, args.i), rep.repair_sets, r=rep.r)
        try:
            codefile.save(cf, args.out)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    _emit(args, rep.to_json(), rep.summary())
    return _verdict_exit(rep.verdict)


def cmd_sweep(args) -> int:
    if args.n_max > args.cap:
        print(f"error: --n-max {args.n_max} exceeds cap {args.cap}", file=sys.stderr)
        return EXIT_IO
    rows = sweep(args.n_max, seed=args.seed, budget=args.budget)
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for row in rows:
            out.write(json.dumps(row) + "\n")
    finally:
        if args.out:
            out.close()
    bad = [row for row in rows if not row["ok"]]
    print(f"{len(rows)} triples, {len(bad)} violations", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_simulate(args) -> int:
    try:
        cf = codefile.load(args.path)
    except (OSError, ValueError) as exc:
        print(f"error: cannot read {args.path}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        res = simulate(cf.code, args.trials, args.erasures, args.seed, cf.repair_sets)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(json.dumps(res))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=_budget, default=DEFAULT_BUDGET,
                        help="max enumeration size, e.g. 2^28")
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="lrcodes", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build and verify a linear LRC")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--q", type=int, default=None, help="field order (default: guaranteed size)")
    c.add_argument("--max-attempts", type=int, default=None)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", parents=[common], help="verify a stored code file")
    a.add_argument("path")
    a.set_defaults(func=cmd_analyze)

    f = sub.add_parser("f4", parents=[common], help="verify an F4 operator family")
    f.add_argument("--family", required=True, choices=["f1-33", "f2-33", "f1-34"])
    f.add_argument("--i", type=int, default=1)
    f.add_argument("--out", default=None)
    f.set_defaults(func=cmd_f4)

    s = sub.add_parser("sweep", parents=[common], help="construct and check all small triples")
    s.add_argument("--n-max", type=int, default=9)
    s.add_argument("--cap", type=int, default=10)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_sweep)

    m = sub.add_parser("simulate", parents=[common], help="random erasures and repair")
    m.add_argument("path")
    m.add_argument("--trials", type=int, default=1000)
    m.add_argument("--erasures", type=int, default=1)
    m.set_defaults(func=cmd_simulate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
