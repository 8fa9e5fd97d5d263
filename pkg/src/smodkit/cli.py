"""Command-line interface.  Every command reads JSON files ('-' for stdin)
and prints JSON.  Exit status: 0 affirmative, 1 negative verdict, 2 usage or
precondition error."""

from __future__ import annotations

import argparse
import json
import sys

from .decompose import DecomposeError
from .exactlp import INFEASIBLE, OPTIMAL, UNBOUNDED
from .optimize import (
    BUDGET_EXCEEDED,
    IlpInstance,
    OptimizeError,
    StackNotTU,
    solve,
)
from .polymatrix import IntMatrix, MatrixError, PolyMatrix, det, evaluate, first_violation
from .polyring import PolyError
from .recognize import ParameterExcluded, recognize
from .search import search_forbidden_minors
from .smodular import (
    SmodError,
    SSet,
    conflict_free_check,
    enumerate_fs_candidates,
    intersection_set,
    is_totally_s_modular,
)
from .tu import is_totally_unimodular

SCHEMAS = """\
JSON formats
  polynomial   string such as "2x+1", "-x", "x^2-3", "4"
  PolyMatrix   {"rows": 2, "cols": 2, "entries": [["x+1", "x"], ["x", "x+1"]]}
               (a bare list of rows is accepted too)
  IntMatrix    {"rows": 2, "cols": 2, "entries": [[1, 0], [0, 1]]}
  SSet         {"pm_closed": true, "elements": ["0", "x", "x+1", "2x+1"]}
               (pm_closed adds the negation of every element)
  pool         list of polynomials, e.g. ["x", "x+1"]
  instance     {"M": IntMatrix, "b": [..], "c": [..]}  for  max c.x, M x <= b, x integer

Exit status: 0 affirmative, 1 negative verdict, 2 usage or precondition error.
"""


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed JSON in {path}: {e}")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def cmd_check_smod(args) -> int:
    M = PolyMatrix.from_json(_load(args.matrix))
    S = SSet.from_json(_load(args.sset))
    if args.a is None:
        res = is_totally_s_modular(M, S)
    else:
        res = is_totally_s_modular(evaluate(M, args.a), S.evaluate(args.a))
    _emit(res.to_json())
    return 0 if res.ok else 1


def cmd_det(args) -> int:
    M = PolyMatrix.from_json(_load(args.matrix))
    _emit(str(det(M)))
    return 0


def cmd_fs_candidates(args) -> int:
    S = SSet.from_json(_load(args.sset))
    _emit(enumerate_fs_candidates(S, args.max_degree).to_json())
    return 0


def cmd_intersections(args) -> int:
    S = SSet.from_json(_load(args.sset))
    report = enumerate_fs_candidates(S, args.max_degree)
    out = {"intersection_set": sorted(intersection_set(S, report.candidates()))}
    if report.unresolved:
        out["unresolved"] = report.to_json()["unresolved"]
    _emit(out)
    return 0


def cmd_search_minors(args) -> int:
    S = SSet.from_json(_load(args.sset))
    pool = _load(args.pool)
    if not isinstance(pool, list) or not pool:
        raise UsageError("pool must be a non-empty JSON list of polynomials")
    if args.n_max < 2:
        raise UsageError("--n-max must be at least 2")
    found = search_forbidden_minors(S, [p if isinstance(p, str) else str(p) for p in pool],
                                    args.n_max, workers=args.workers)
    _emit({"count": len(found),
           "minors": [{"matrix": M.to_json(), "det": str(d)} for M, d in found]})
    return 0 if found else 1


def cmd_conflict_check(args) -> int:
    M = PolyMatrix.from_json(_load(args.matrix))
    res = conflict_free_check(M)
    _emit(res.to_json())
    return 0 if res.ordered else 1


def cmd_tu_check(args) -> int:
    A = IntMatrix.from_json(_load(args.matrix))
    res = is_totally_unimodular(A)
    _emit(res.to_json())
    return 0 if res.is_tu else 1


def cmd_recognize(args) -> int:
    M = IntMatrix.from_json(_load(args.matrix))
    try:
        res = recognize(M, args.a)
    except ParameterExcluded as e:
        _emit({"verdict": "No", "reason": "ParameterExcluded", "message": str(e)})
        return 2
    _emit(res.to_json())
    return 0 if res else 1


def cmd_solve_ilp(args) -> int:
    inst = IlpInstance.from_json(_load(args.instance), args.a)
    if args.validate:
        vals = {0, args.a, args.a + 1, 2 * args.a + 1}
        vals |= {-v for v in vals}
        hit = first_violation(inst.M.entries, vals.__contains__)
        if hit is not None:
            sel, d = hit
            _emit({"status": "NotAdmissible", "witness": {**sel.to_json(), "det": d}})
            return 2
    try:
        out = solve(inst)
    except StackNotTU as e:
        _emit({"status": "StackNotTU", "witness": e.witness})
        return 2
    _emit(out.to_json())
    return {OPTIMAL: 0, INFEASIBLE: 1, UNBOUNDED: 1, BUDGET_EXCEEDED: 2}[out.status]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smodkit",
        description="Parametric subdeterminant tools: total S-modularity over Z[x], "
                    "forbidden minors, recognition and integer optimization.",
        epilog=SCHEMAS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text, epilog=SCHEMAS,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(func=func)
        return p

    p = add("check-smod", cmd_check_smod,
            "Is every subdeterminant of a PolyMatrix in S?  With --a, check M(a) against S(a).")
    p.add_argument("--matrix", required=True, help="PolyMatrix JSON file")
    p.add_argument("--sset", required=True, help="SSet JSON file")
    p.add_argument("--a", type=int, help="evaluate matrix and S at this integer first")

    p = add("det", cmd_det, "Symbolic determinant of a square PolyMatrix, printed as a JSON string.")
    p.add_argument("--matrix", required=True, help="PolyMatrix JSON file")

    p = add("fs-candidates", cmd_fs_candidates,
            "Candidate determinants of forbidden minors for S (2x2 set and larger-size candidates).")
    p.add_argument("--sset", required=True, help="SSet JSON file")
    p.add_argument("--max-degree", type=int, default=1, help="degree cap for candidates (default 1)")

    p = add("intersections", cmd_intersections,
            "Integers a where some s in S meets some candidate determinant f != s.")
    p.add_argument("--sset", required=True, help="SSet JSON file")
    p.add_argument("--max-degree", type=int, default=1, help="degree cap for candidates (default 1)")

    p = add("search-minors", cmd_search_minors,
            "Exhaustive forbidden-minor search with entries from a pool; exit 1 if none found.")
    p.add_argument("--sset", required=True, help="SSet JSON file")
    p.add_argument("--pool", required=True, help="JSON list of entry polynomials")
    p.add_argument("--n-max", type=int, required=True, help="largest minor size")
    p.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")

    p = add("conflict-check", cmd_conflict_check,
            "For entries in {x, x+1}: exit 0 if rows/columns are orderable, 1 with the conflict 2x2.")
    p.add_argument("--matrix", required=True, help="PolyMatrix JSON file")

    p = add("tu-check", cmd_tu_check, "Total unimodularity; exit 1 with a minimal witness if not.")
    p.add_argument("--matrix", required=True, help="IntMatrix JSON file")

    p = add("recognize", cmd_recognize,
            "Is M totally +-{0,1,a,a+1,2a+1}-modular?  Exit 0 yes, 1 no, 2 for a in {-3,-2,1,2}.")
    p.add_argument("--a", type=int, required=True, help="integer parameter")
    p.add_argument("--matrix", required=True, help="IntMatrix JSON file")

    p = add("solve-ilp", cmd_solve_ilp,
            "max c.x s.t. M x <= b, x integer, for totally +-{0,a,a+1,2a+1}-modular M.  "
            "Exit 0 Optimal, 1 Infeasible or Unbounded, 2 on rejected input or BudgetExceeded.  "
            "SMODKIT_BUDGET caps the number of (x1, y) pairs (default 1000000).")
    p.add_argument("--a", type=int, required=True, help="integer parameter, not -2 or 1")
    p.add_argument("--instance", required=True, help="instance JSON file")
    p.add_argument("--validate", action="store_true",
                   help="check every subdeterminant of M first (exponential, small inputs only)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, MatrixError, PolyError, SmodError, DecomposeError, OptimizeError,
            KeyError, TypeError, ValueError) as e:
        sys.stderr.write(f"smodkit {args.command}: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
