"""Command-line interface.

Exit status: 0 on a ``yes`` verdict or success, 1 on a ``no`` verdict (or a
witness that fails verification), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import exact
from .core import UsageError
from .families import FAMILIES, FunctionSpec, build_function, build_table
from .serialize import (
    distance_to_dict,
    estimate_to_dict,
    to_csv,
    to_json,
    verdict_to_dict,
    witness_from_dict,
)
from .testers import (
    constancy_test,
    dependency_estimate,
    quasisymmetry_test,
    symmetry_test,
    verify_witness,
)
from .trials import estimate_trials, run_trials
from .truthtable import read_table_file, store_truth_table

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _int_list(s: str) -> list[int]:
    s = s.strip()
    return [int(x) for x in s.split(",")] if s else []


def _function_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("function")
    g.add_argument("--table", help="truth-table file")
    g.add_argument("--family", choices=FAMILIES, help="built-in function family")
    g.add_argument("--n", type=int, help="number of arguments")
    g.add_argument("--value", type=int, default=0, help="const: output value")
    g.add_argument("--index", type=int, default=1, help="dictator: argument index")
    g.add_argument("--t", type=int, help="threshold: minimum weight for output 1")
    g.add_argument("--J", dest="J", type=_int_list, help="sym-junta/junta: comma-separated indices")
    g.add_argument("--levels", type=_int_list, help="sym-junta: output for each |x_J| = 0..|J|")
    g.add_argument("--base", choices=FAMILIES, help="perturbed: base family (uses the other family flags)")
    g.add_argument("--m", type=int, help="perturbed: number of flipped entries")
    g.add_argument("--function-seed", type=int, default=0, help="random-table/perturbed content seed")


def _common(p: argparse.ArgumentParser, eps=True) -> None:
    if eps:
        p.add_argument("--eps", type=float, default=0.1)
        p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default="json")


def _spec_from(args, family: str) -> FunctionSpec:
    n = args.n
    if n is None:
        raise UsageError("--n is required with --family")
    if family == "const":
        return FunctionSpec("const", n, {"value": args.value})
    if family == "dictator":
        return FunctionSpec("dictator", n, {"index": args.index})
    if family in ("parity", "majority"):
        return FunctionSpec(family, n)
    if family == "threshold":
        if args.t is None:
            raise UsageError("threshold needs --t")
        return FunctionSpec("threshold", n, {"t": args.t})
    if family == "random-table":
        return FunctionSpec("random-table", n, {"seed": args.function_seed})
    if family == "sym-junta":
        if args.J is None or args.levels is None:
            raise UsageError("sym-junta needs --J and --levels")
        return FunctionSpec("sym-junta", n, {"J": args.J, "levels": args.levels})
    if family == "perturbed":
        if args.base is None or args.m is None:
            raise UsageError("perturbed needs --base and --m")
        if args.base == "perturbed":
            raise UsageError("perturbed base cannot itself be perturbed")
        base = _spec_from(args, args.base)
        return FunctionSpec("perturbed", n, {"base": base, "m": args.m, "seed": args.function_seed})
    raise UsageError(f"unknown family {family!r}")


def _load(args):
    """(oracle, table-or-None, description) from --table or --family."""
    if args.table and args.family:
        raise UsageError("give either --table or --family, not both")
    if args.table:
        tt = read_table_file(args.table)
        return tt.oracle(), tt, {"table": args.table, "n": tt.arity}
    if args.family:
        spec = _spec_from(args, args.family)
        f = build_function(spec)
        return f, None, spec.to_dict()
    raise UsageError("a function is required: --table FILE or --family NAME --n N")


def _table(args, f, tt):
    if tt is not None:
        return tt
    return build_table(_spec_from(args, args.family))


def _emit(obj, fmt: str) -> None:
    sys.stdout.write(to_csv(obj) if fmt == "csv" else to_json(obj) + "\n")


_TESTS = {"sym": symmetry_test, "const": constancy_test, "qsym": quasisymmetry_test}


def cmd_test(args) -> int:
    f, _, desc = _load(args)
    v = _TESTS[args.property](f, args.eps, args.delta, args.seed)
    out = verdict_to_dict(
        v, seed=args.seed, params={"test": args.property, "eps": args.eps, "delta": args.delta, "function": desc}
    )
    _emit(out, args.format)
    return EXIT_YES if v.is_yes else EXIT_NO


def cmd_estimate(args) -> int:
    f, _, desc = _load(args)
    est = dependency_estimate(f, args.eps, args.delta, args.seed)
    out = estimate_to_dict(est, seed=args.seed, params={"eps": args.eps, "delta": args.delta, "function": desc})
    _emit(out, args.format)
    return EXIT_YES


def cmd_distance(args) -> int:
    f, tt, desc = _load(args)
    tt = _table(args, f, tt)
    cls = args.cls
    if cls == "sym":
        d = exact.dist_sym(tt)
    elif cls == "const":
        d = exact.dist_const(tt)
    elif cls == "qsym":
        d = exact.dist_quasisym(tt)
    else:
        if args.J is None:
            raise UsageError("distance junta needs --J")
        d = exact.dist_junta(tt, args.J)
    out = {"class": cls, **distance_to_dict(d), "n": tt.arity, "function": desc}
    if cls == "junta":
        out["J"] = sorted(args.J)
    _emit(out, args.format)
    return EXIT_YES


def _read_witnesses(path: str) -> list:
    text = sys.stdin.read() if path == "-" else open(path).read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"witness file is not JSON: {exc}") from exc
    if isinstance(doc, dict) and "witness" in doc:
        if doc["witness"] is None:
            raise UsageError("verdict carries no witness (verdict was yes)")
        return [doc["witness"]]
    if isinstance(doc, dict) and "evidence" in doc:
        return list(doc["evidence"])
    if isinstance(doc, list):
        return doc
    return [doc]


def cmd_verify(args) -> int:
    f, _, desc = _load(args)
    raw = _read_witnesses(args.witness)
    results = [verify_witness(f, witness_from_dict(w)) for w in raw]
    ok = all(results)
    _emit({"verified": ok, "results": results, "queries": f.queries, "function": desc}, args.format)
    return EXIT_YES if ok else EXIT_NO


def cmd_bench(args) -> int:
    _, tt, desc = _load(args)
    source = tt if tt is not None else _spec_from(args, args.family)
    if args.tester == "deps":
        rep = estimate_trials(source, args.eps, args.delta, args.trials, args.seed)
    else:
        # single basic steps take neither parameter; qsym-basic takes eps only
        eps = None if args.tester in ("sym-basic", "const-basic") else args.eps
        delta = None if args.tester.endswith("-basic") else args.delta
        rep = run_trials(source, args.tester, eps, delta, args.trials, args.seed, J=args.J, table=tt)
    out = rep.to_dict()
    if tt is not None:
        out["spec"] = desc
    _emit(out, args.format)
    return EXIT_YES


def cmd_table(args) -> int:
    f, tt, _ = _load(args)
    sys.stdout.write(store_truth_table(_table(args, f, tt)))
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qsymtest", description="Property testers for Boolean functions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("test", help="run a property test once")
    p.add_argument("property", choices=("sym", "const", "qsym"))
    _function_args(p)
    _common(p)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("estimate", help="estimate the dependency set")
    p.add_argument("attribute", choices=("deps",))
    _function_args(p)
    _common(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("distance", help="exact distance to a function class (brute force)")
    p.add_argument("cls", choices=("sym", "const", "junta", "qsym"))
    _function_args(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("verify", help="re-check witnesses against a function")
    _function_args(p)
    p.add_argument("--witness", default="-", help="JSON file with a verdict, estimate or witness ('-' = stdin)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="repeat a tester over seeded trials and report rates")
    p.add_argument("tester", choices=("sym", "const", "qsym", "sym-basic", "const-basic", "qsym-basic", "deps"))
    _function_args(p)
    _common(p)
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("table", help="write the truth table of a function")
    _function_args(p)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, OSError, KeyError) as exc:
        print(f"qsymtest: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
