"""Integer programs max c.x s.t. M x <= b, x integer, for totally
+-{0, a, a+1, 2a+1}-modular M.

After normalisation M = T + a*u*v^T with u in {-1,1}^m, v in {1,2}^n with at
most one 2 (in column 0), and each row of T in {0, u_i}.  Writing x = (x1, x~) and y = 1.x~ turns the problem into

    T[:, 1:] x~ <= b - x1 * M[:, 0] - a*y*u,   1.x~ = y,

whose matrix [T[:, 1:]; 1^T] is totally unimodular.  So for every fixed
integer pair (x1, y) the remaining LP has an integral optimal vertex, and the
integer program reduces to a search over (x1, y).
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .decompose import DecomposeError, lift_entries, rank1_factor
from .exactlp import INFEASIBLE, OPTIMAL, UNBOUNDED, LpProblem, bounds_2d, solve_lp
from .polymatrix import IntMatrix, MatrixError
from .polyring import X, Poly
from .tu import is_totally_unimodular

BUDGET_EXCEEDED = "BudgetExceeded"
DEFAULT_BUDGET = 10 ** 6
EXCLUDED = frozenset({-2, 1})
FOUR_SET = tuple(s for p in (Poly(()), X, X + 1, 2 * X + 1) for s in {p, -p})


class OptimizeError(ValueError):
    pass


class ParameterExcluded(OptimizeError):
    pass


class NotDecomposable(OptimizeError):
    pass


class StackNotTU(OptimizeError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class IntegralityFailure(OptimizeError):
    pass


def budget_from_env() -> int:
    raw = os.environ.get("SMODKIT_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise OptimizeError(f"SMODKIT_BUDGET must be an integer, got {raw!r}")
    if value < 1:
        raise OptimizeError("SMODKIT_BUDGET must be positive")
    return value


@dataclass
class IlpInstance:
    M: IntMatrix
    b: tuple
    c: tuple
    a: int

    def __post_init__(self):
        self.b = tuple(int(t) for t in self.b)
        self.c = tuple(int(t) for t in self.c)
        if len(self.b) != self.M.rows or len(self.c) != self.M.cols:
            raise MatrixError(f"instance shapes: M {self.M.shape}, b {len(self.b)}, c {len(self.c)}")

    def is_feasible(self, x: Sequence[int]) -> bool:
        return all(sum(m * t for m, t in zip(row, x)) <= bi for row, bi in zip(self.M.entries, self.b))

    def objective(self, x: Sequence[int]) -> int:
        return sum(ci * t for ci, t in zip(self.c, x))

    @classmethod
    def from_json(cls, obj, a: int) -> "IlpInstance":
        if not isinstance(obj, dict) or not {"M", "b", "c"} <= set(obj):
            raise OptimizeError("instance JSON needs M, b, c")
        return cls(IntMatrix.from_json(obj["M"]), tuple(obj["b"]), tuple(obj["c"]), a)


@dataclass
class IlpOutcome:
    status: str
    x: Optional[tuple] = None
    objective: Optional[int] = None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.x is not None:
            out["x"] = list(self.x)
            out["objective"] = self.objective
        out.update(self.detail)
        return out


# -- preprocessing --------------------------------------------------------------------

@dataclass
class PreprocessTrace:
    n_original: int
    steps: list = field(default_factory=list)  # human-readable record, JSON-ready
    zero_cols: list = field(default_factory=list)
    dropped_rows: list = field(default_factory=list)
    col_flips: tuple = ()  # over the kept columns
    kept_cols: list = field(default_factory=list)  # original index per kept column
    groups: list = field(default_factory=list)  # per aggregated column: kept-column positions
    perm: list = field(default_factory=list)  # reduced column k <- group perm[k]
    unbounded_if_feasible: Optional[str] = None

    def lift(self, z: Sequence[int]) -> tuple:
        """Map a reduced solution back to the original variables."""
        agg = [0] * len(self.groups)
        for k, g in enumerate(self.perm):
            agg[g] = z[k]
        kept = [0] * len(self.kept_cols)
        for g, members in enumerate(self.groups):
            kept[members[0]] = agg[g]
        x = [0] * self.n_original
        for pos, j in enumerate(self.kept_cols):
            x[j] = -kept[pos] if self.col_flips[pos] else kept[pos]
        return tuple(x)

    def to_json(self) -> dict:
        return {"steps": self.steps}


@dataclass
class Reduced:
    """Normal form: M = T + a*u*v^T, u in {-1,1}^m, v[0] in {1, 2}, v[1:] = 1,
    row i of T in {0, u_i}."""
    M: IntMatrix
    T: IntMatrix
    u: tuple
    v: tuple
    b: tuple
    c: tuple
    a: int
    # the same problem before all-(2a+1) rows were rescaled; still totally
    # S(a)-modular, so the proximity bound applies to its relaxation
    M_unscaled: IntMatrix
    b_unscaled: tuple


def _floor_div(p: int, q: int) -> int:
    return p // q  # Python floors toward -inf for either sign of q


def preprocess(inst: IlpInstance):
    """Returns (Reduced or None, PreprocessTrace, early status or None).

    Zero rows with b_i < 0 make the instance infeasible; other zero rows are
    dropped.  Zero columns are fixed to 0, and flag the instance as unbounded
    if feasible when their cost is nonzero (the variables are free).  Only
    columns are negated to make v positive; rows keep the sign of u.
    Duplicate all-(2a+1) columns are merged into the one with the largest
    cost; differing costs also flag unboundedness.  All-(2a+1) rows become
    all-a rows with right-hand side floor(b*a/(2a+1)).
    """
    a = inst.a
    M, b, c = inst.M, list(inst.b), list(inst.c)
    trace = PreprocessTrace(M.cols)
    rows = []
    for i, row in enumerate(M.entries):
        if any(row):
            rows.append(i)
        elif b[i] < 0:
            trace.steps.append({"op": "zero_row_infeasible", "row": i})
            return None, trace, INFEASIBLE
        else:
            trace.dropped_rows.append(i)
    if trace.dropped_rows:
        trace.steps.append({"op": "drop_zero_rows", "rows": trace.dropped_rows})
    cols = []
    for j in range(M.cols):
        if any(M.entries[i][j] for i in rows):
            cols.append(j)
        else:
            trace.zero_cols.append(j)
            if c[j] and trace.unbounded_if_feasible is None:
                trace.unbounded_if_feasible = f"zero column {j} with nonzero cost"
    if trace.zero_cols:
        trace.steps.append({"op": "fix_zero_columns", "cols": trace.zero_cols})
    trace.kept_cols = cols
    M = M.submatrix(rows, cols)
    b = [b[i] for i in rows]
    c = [c[j] for j in cols]
    if not cols:
        return None, trace, OPTIMAL

    try:
        T, R = lift_entries(M, a, FOUR_SET)
        u, v = rank1_factor(R)
    except DecomposeError as e:
        raise NotDecomposable(str(e))
    # Nonzero rows and columns force u, v nonzero.  Columns are flipped so
    # v > 0 (substituting -x_j for x_j).  Negating an inequality row is not an
    # equivalence, so rows keep the sign of u; row i of T then lies in
    # {0, sign(u_i)}, which is the same as negating it for unimodularity.
    col_flips = tuple(t < 0 for t in v)
    trace.col_flips = col_flips
    if any(col_flips):
        trace.steps.append({"op": "negate_columns", "cols": [cols[j] for j, f in enumerate(col_flips) if f]})
    sgn_c = [-1 if f else 1 for f in col_flips]
    M = IntMatrix([[sgn_c[j] * e for j, e in enumerate(r)] for r in M.entries])
    T = IntMatrix([[sgn_c[j] * e for j, e in enumerate(r)] for r in T.entries])
    c = [s * t for s, t in zip(sgn_c, c)]
    v = [abs(t) for t in v]
    row_sign = [1 if t > 0 else -1 for t in u]
    if (any(t * sg not in (0, 1) for r, sg in zip(T.entries, row_sign) for t in r)
            or max(abs(t) for t in u) * max(v) > 2):
        raise NotDecomposable("entries do not normalise to T in {0,1} with u*v^T in {1,2}")

    # duplicate all-(2a+1) columns (v = 2): one integer variable carries their sum
    twos = [j for j, t in enumerate(v) if t == 2]
    groups = [[j] for j in range(len(v)) if v[j] == 1]
    if twos:
        groups.insert(0, twos)
        if len(twos) > 1:
            costs = [c[j] for j in twos]
            keep = twos[costs.index(max(costs))]
            groups[0] = [keep] + [j for j in twos if j != keep]
            trace.steps.append({"op": "aggregate_columns", "cols": [cols[j] for j in groups[0]],
                                "cost": max(costs)})
            if len(set(costs)) > 1 and trace.unbounded_if_feasible is None:
                trace.unbounded_if_feasible = "identical columns with different costs"
    trace.groups = groups
    trace.perm = list(range(len(groups)))  # the v=2 group, if any, is already first
    if twos:
        trace.steps.append({"op": "move_column_first", "col": cols[groups[0][0]]})
    reps = [g[0] for g in groups]
    M = M.submatrix(range(M.rows), reps)
    T = T.submatrix(range(T.rows), reps)
    c = [c[j] for j in reps]
    v = tuple(v[j] for j in reps)
    M_unscaled, b_unscaled = M, tuple(b)

    # all-(2a+1) rows (u = 2) become all-a rows with a floored right-hand side
    scaled = [i for i, t in enumerate(u) if abs(t) == 2]
    if scaled:
        Me, Te = [list(r) for r in M.entries], [list(r) for r in T.entries]
        for i in scaled:
            new_b = _floor_div(b[i] * a, 2 * a + 1)
            trace.steps.append({"op": "rescale_row", "row": rows[i], "rhs": [b[i], new_b]})
            Me[i] = [row_sign[i] * a] * len(Me[i])
            Te[i] = [0] * len(Te[i])
            b[i] = new_b
        M, T = IntMatrix(Me), IntMatrix(Te)
    red = Reduced(M, T, tuple(row_sign), v, tuple(b), tuple(c), a, M_unscaled, b_unscaled)
    return red, trace, None


# -- reformulation --------------------------------------------------------------------

@dataclass
class TwoVarMip:
    """Variables (x1, y, x~): M0*x1 + a*y*u + T1 x~ <= b,  1.x~ = y."""
    M0: tuple
    u: tuple
    T1: IntMatrix
    a: int
    b: tuple
    c0: int
    c1: tuple

    @property
    def n_tilde(self) -> int:
        return self.T1.cols

    def relaxation(self, c=None) -> LpProblem:
        """LP over (x1, y, x~)."""
        A = [[m0, self.a * ui] + list(r) for m0, ui, r in zip(self.M0, self.u, self.T1.entries)]
        eq = [[0, -1] + [1] * self.n_tilde]
        obj = [self.c0, 0] + list(self.c1) if c is None else c
        return LpProblem(A, list(self.b), obj, eq, [0])

    def fixed(self, x1: int, y: int) -> LpProblem:
        """LP over x~ with the integer pair fixed."""
        rhs = [bi - x1 * m0 - self.a * y * ui for bi, m0, ui in zip(self.b, self.M0, self.u)]
        return LpProblem([list(r) for r in self.T1.entries], rhs, list(self.c1),
                         [[1] * self.n_tilde], [y])


def reformulate(red: Reduced) -> TwoVarMip:
    T1 = red.T.submatrix(range(red.T.rows), range(1, red.T.cols))
    stack = IntMatrix([list(r) for r in T1.entries] + [[1] * T1.cols])
    verdict = is_totally_unimodular(stack)
    if not verdict:
        sel, d = verdict.witness
        raise StackNotTU("[T[:,1:]; 1] is not totally unimodular", {**sel.to_json(), "det": d})
    return TwoVarMip(tuple(r[0] for r in red.M.entries), red.u, T1, red.a, red.b, red.c[0], red.c[1:])


# -- solving --------------------------------------------------------------------------

def _integral(xs) -> bool:
    return all(Fraction(t).denominator == 1 for t in xs)



def _pair_range(lo, hi, center, radius):
    lo = math.ceil(lo) if lo is not None else math.ceil(center - radius)
    hi = math.floor(hi) if hi is not None else math.floor(center + radius)
    return lo, hi


class _Search:
    def __init__(self, mip: TwoVarMip, budget: int):
        self.mip = mip
        self.budget = budget
        self.solves = 0

    def y_interval(self, x1: int):
        """Feasible y range of the relaxation with x1 fixed, or None."""
        base = self.mip.relaxation()
        p = LpProblem(base.A, base.b, base.c, base.A_eq + [[1, 0] + [0] * self.mip.n_tilde],
                      base.b_eq + [x1])
        out = []
        for sign in (-1, 1):
            res = solve_lp(p.with_objective([0, sign] + [0] * self.mip.n_tilde))
            if res.status == INFEASIBLE:
                return None
            out.append(None if res.status == UNBOUNDED else res.x[1])
        return out

    def x1_bound(self, x1: int):
        """Relaxation optimum with x1 fixed (c0*x1 included): an upper bound
        for that x1."""
        base = self.mip.relaxation()
        p = LpProblem(base.A, base.b, base.c, base.A_eq + [[1, 0] + [0] * self.mip.n_tilde],
                      base.b_eq + [x1])
        res = solve_lp(p)
        return res.objective if res.status == OPTIMAL else None

    def _fixed(self, x1: int, y: int, objective: bool):
        self.solves += 1
        if self.solves > self.budget:
            return BUDGET_EXCEEDED
        p = self.mip.fixed(x1, y)
        if not objective:
            p = p.with_objective([0] * self.mip.n_tilde)
        res = solve_lp(p)
        if res.status == OPTIMAL and not _integral(res.x):
            raise IntegralityFailure(f"fractional vertex at (x1, y) = ({x1}, {y})")
        return res

    def run(self, x1_range, y_center, y_radius, objective=True):
        """Best (value, x1, y, x~) over integer pairs, smallest pair on ties.

        For fixed x1 the optimum of the x~ problem is a concave function of
        y (an LP value in its right-hand side) and is attained at an integral
        vertex, so the smallest maximising y is found by binary search on
        its forward differences.  Without an objective the first feasible pair
        is returned."""
        if not objective:
            for x1 in range(x1_range[0], x1_range[1] + 1):
                iv = self.y_interval(x1)
                if iv is None:
                    continue
                lo, hi = _pair_range(iv[0], iv[1], y_center, y_radius)
                if lo > hi:
                    continue
                res = self._fixed(x1, lo, False)
                if res == BUDGET_EXCEEDED:
                    return res
                if res.status == OPTIMAL:
                    return (0, x1, lo, [int(t) for t in res.x])
            return None

        # The relaxation bound h(x1) is concave with its maximum at the
        # relaxed optimum, so each outward sweep stops as soon as h cannot
        # beat the incumbent or the x1 slice becomes empty.
        relax = solve_lp(self.mip.relaxation())
        if relax.status != OPTIMAL:
            return None
        start = min(max(math.ceil(relax.x[0]), x1_range[0]), x1_range[1] + 1)
        best = None
        for sweep in (range(start, x1_range[1] + 1), range(start - 1, x1_range[0] - 1, -1)):
            for x1 in sweep:
                ub = self.x1_bound(x1)
                if ub is None:
                    break
                if best is not None and (ub < best[0] or (ub == best[0] and x1 > best[1])):
                    break
                found = self._best_y(x1, y_center, y_radius)
                if found in (BUDGET_EXCEEDED, UNBOUNDED):
                    return found
                if found is None:
                    continue
                if best is None or found[0] > best[0] or (found[0] == best[0] and x1 < best[1]):
                    best = found
        return best

    def _best_y(self, x1, y_center, y_radius):
        iv = self.y_interval(x1)
        if iv is None:
            return None
        lo, hi = _pair_range(iv[0], iv[1], y_center, y_radius)
        if lo > hi:
            return None
        cache = {}

        def f(y):
            if y not in cache:
                cache[y] = self._fixed(x1, y, True)
            return cache[y]

        while lo < hi:
            mid = (lo + hi) // 2
            pair = (f(mid), f(mid + 1))
            for r in pair:
                if r == BUDGET_EXCEEDED:
                    return r
                if r.status == UNBOUNDED:
                    return UNBOUNDED
                if r.status != OPTIMAL:
                    raise OptimizeError(f"integer y inside the feasible interval is infeasible at x1 = {x1}")
            if pair[1].objective > pair[0].objective:
                lo = mid + 1
            else:
                hi = mid
        res = f(lo)
        if res == BUDGET_EXCEEDED or res.status == UNBOUNDED:
            return res if res == BUDGET_EXCEEDED else UNBOUNDED
        if res.status != OPTIMAL:
            return None
        return (self.mip.c0 * x1 + res.objective, x1, lo, [int(t) for t in res.x])


def _solve_tu(inst: IlpInstance) -> IlpOutcome:
    """a in {-1, 0}: the matrix is totally unimodular and one LP suffices."""
    res = solve_lp(LpProblem([list(r) for r in inst.M.entries], list(inst.b), list(inst.c)))
    if res.status == INFEASIBLE:
        return IlpOutcome(INFEASIBLE)
    if res.status == UNBOUNDED:
        return IlpOutcome(UNBOUNDED)
    if not _integral(res.x):
        raise IntegralityFailure("fractional vertex for a totally unimodular matrix")
    x = tuple(int(t) for t in res.x)
    return IlpOutcome(OPTIMAL, x, inst.objective(x))


def solve(inst: IlpInstance, budget: Optional[int] = None) -> IlpOutcome:
    a = inst.a
    if a in EXCLUDED:
        raise ParameterExcluded(f"a={a} is excluded")
    if a in (-1, 0):
        return _solve_tu(inst)
    if budget is None:
        budget = budget_from_env()
    red, trace, early = preprocess(inst)
    if early == INFEASIBLE:
        return IlpOutcome(INFEASIBLE, detail={"trace": trace.to_json()})
    if red is None:
        # no nonzero column left: every remaining row reads 0 <= b_i with b_i >= 0
        if trace.unbounded_if_feasible:
            return IlpOutcome(UNBOUNDED, detail={"trace": trace.to_json(), "reason": trace.unbounded_if_feasible})
        x = (0,) * inst.M.cols
        return IlpOutcome(OPTIMAL, x, 0, {"trace": trace.to_json()})

    mip = reformulate(red)
    n = red.M.cols
    delta = abs(2 * a + 1)
    radius = n * delta  # proximity between LP and integer optima

    lp = solve_lp(LpProblem([list(r) for r in red.M_unscaled.entries], list(red.b_unscaled), list(red.c)))
    if lp.status == INFEASIBLE:
        return IlpOutcome(INFEASIBLE, detail={"trace": trace.to_json()})
    if lp.status == UNBOUNDED:
        # integer feasible iff some integer point lies near a relaxed feasible point
        feas = solve_lp(LpProblem([list(r) for r in red.M_unscaled.entries], list(red.b_unscaled), [0] * n))
        center, objective = feas.x, False
    else:
        center, objective = lp.x, True
    x1c, yc = center[0], sum(center[1:])
    box = bounds_2d(mip.relaxation(), 0, 1)
    if box == INFEASIBLE:
        return IlpOutcome(INFEASIBLE, detail={"trace": trace.to_json()})
    x1_range = _pair_range(box.lo_i, box.hi_i, x1c, radius)
    y_lo, y_hi = _pair_range(box.lo_j, box.hi_j, yc, (n - 1) * radius)
    detail = {"trace": trace.to_json(), "box": {"x1": list(x1_range), "y": [y_lo, y_hi]}}
    volume = max(0, x1_range[1] - x1_range[0] + 1) * max(0, y_hi - y_lo + 1)
    detail["box_volume"] = volume
    if volume > budget:
        return IlpOutcome(BUDGET_EXCEEDED, detail=detail)

    search = _Search(mip, budget)
    best = search.run(x1_range, yc, (n - 1) * radius, objective)
    if best == BUDGET_EXCEEDED:
        return IlpOutcome(BUDGET_EXCEEDED, detail=detail)
    if best == UNBOUNDED:
        return IlpOutcome(UNBOUNDED, detail=detail)
    if best is None:
        return IlpOutcome(INFEASIBLE, detail=detail)
    if not objective or trace.unbounded_if_feasible:
        if trace.unbounded_if_feasible:
            detail["reason"] = trace.unbounded_if_feasible
        return IlpOutcome(UNBOUNDED, detail=detail)
    _, x1, y, xt = best
    x = trace.lift([x1] + xt)
    if not inst.is_feasible(x):
        raise OptimizeError("lifted solution is infeasible")
    return IlpOutcome(OPTIMAL, x, inst.objective(x), detail)


# -- oracle ---------------------------------------------------------------------------

def brute_force_ilp(M: IntMatrix, b: Sequence[int], c: Sequence[int], B) -> IlpOutcome:
    """Exhaustive optimum over a box: ``|x_i| <= B`` for an integer B, or
    ``lo_i <= x_i <= hi_i`` for a list of pairs.  Ties go to the
    lexicographically smallest x."""
    import numpy as np

    n = M.cols
    ranges = [(-B, B)] * n if isinstance(B, int) else [tuple(r) for r in B]
    if len(ranges) != n:
        raise OptimizeError("one range per variable")
    if n == 0 or any(lo > hi for lo, hi in ranges):
        if n == 0 and all(t >= 0 for t in b):
            return IlpOutcome(OPTIMAL, (), 0)
        return IlpOutcome(INFEASIBLE)
    A = np.array(M.entries, dtype=np.int64).reshape(M.rows, n)
    bv = np.array(b, dtype=np.int64)
    cv = np.array(c, dtype=np.int64)
    axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in ranges]
    best = None
    # slice along the first variable to bound memory
    for head in axes[0].tolist():
        if n > 1:
            grid = np.stack(np.meshgrid(*axes[1:], indexing="ij"), -1).reshape(-1, n - 1)
            pts = np.concatenate([np.full((grid.shape[0], 1), head, dtype=np.int64), grid], axis=1)
        else:
            pts = np.array([[head]], dtype=np.int64)
        ok = np.all(pts @ A.T <= bv, axis=1) if M.rows else np.ones(len(pts), dtype=bool)
        if not ok.any():
            continue
        feas = pts[ok]
        vals = feas @ cv
        top = int(vals.max())
        if best is None or top > best[0]:
            best = (top, tuple(int(t) for t in feas[vals == top][0]))
    if best is None:
        return IlpOutcome(INFEASIBLE)
    return IlpOutcome(OPTIMAL, best[1], best[0])
