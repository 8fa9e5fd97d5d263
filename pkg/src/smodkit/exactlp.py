"""Exact rational linear programming: max c.x s.t. A x <= b, A_eq x = b_eq, x free.

A dense two-phase tableau simplex over ``Fraction`` with Bland's rule.  Free
variables are split as x = x+ - x-.  When the stacked constraint matrix has
full column rank an optimal point is moved to a vertex of the original
polyhedron before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "Optimal"
INFEASIBLE = "Infeasible"
UNBOUNDED = "Unbounded"


def _fr(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass
class LpProblem:
    A: list
    b: list
    c: list
    A_eq: list = field(default_factory=list)
    b_eq: list = field(default_factory=list)

    def __post_init__(self):
        self.A = [[_fr(v) for v in r] for r in self.A]
        self.b = [_fr(v) for v in self.b]
        self.c = [_fr(v) for v in self.c]
        self.A_eq = [[_fr(v) for v in r] for r in self.A_eq]
        self.b_eq = [_fr(v) for v in self.b_eq]
        n = len(self.c)
        if len(self.A) != len(self.b) or any(len(r) != n for r in self.A):
            raise ValueError("inequality block does not match b and c")
        if len(self.A_eq) != len(self.b_eq) or any(len(r) != n for r in self.A_eq):
            raise ValueError("equality block does not match b_eq and c")

    @property
    def n(self) -> int:
        return len(self.c)

    def with_objective(self, c: Sequence) -> "LpProblem":
        return LpProblem(self.A, self.b, list(c), self.A_eq, self.b_eq)

    def is_feasible_point(self, x: Sequence) -> bool:
        x = [_fr(v) for v in x]
        return (all(sum(a * t for a, t in zip(r, x)) <= bi for r, bi in zip(self.A, self.b))
                and all(sum(a * t for a, t in zip(r, x)) == bi for r, bi in zip(self.A_eq, self.b_eq)))


@dataclass
class LpOutcome:
    status: str
    x: Optional[list] = None
    objective: Optional[Fraction] = None
    ray: Optional[list] = None  # improving direction when Unbounded

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.x is not None:
            out["x"] = [str(v) for v in self.x]
            out["objective"] = str(self.objective)
        if self.ray is not None:
            out["ray"] = [str(v) for v in self.ray]
        return out


class _Tableau:
    """Rows read  x_basis[i] + sum_j rows[i][j] x_j = rhs[i]."""

    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, q: int):
        rows, rhs = self.rows, self.rhs
        piv = rows[r][q]
        prow = [v / piv for v in rows[r]]
        rows[r] = prow
        rhs[r] = rhs[r] / piv
        for i in range(len(rows)):
            if i != r:
                f = rows[i][q]
                if f:
                    row = rows[i]
                    rows[i] = [a - f * p for a, p in zip(row, prow)]
                    rhs[i] -= f * rhs[r]
        self.basis[r] = q

    def reduced(self, obj):
        cb = [obj[j] for j in self.basis]
        ncol = len(obj)
        d = list(obj)
        for i, row in enumerate(self.rows):
            if cb[i]:
                for j in range(ncol):
                    if row[j]:
                        d[j] -= cb[i] * row[j]
        return d

    def run(self, obj, allowed):
        """Maximise obj; returns None at optimum or the entering column of an
        unbounded ray."""
        while True:
            d = self.reduced(obj)
            q = next((j for j in allowed if d[j] > 0), None)
            if q is None:
                return None
            best = None
            for i, row in enumerate(self.rows):
                if row[q] > 0:
                    ratio = self.rhs[i] / row[q]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return q
            self.pivot(best[1], q)

    def values(self, ncol):
        x = [Fraction(0)] * ncol
        for i, j in enumerate(self.basis):
            x[j] = self.rhs[i]
        return x


def _rank(rows: list) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncol = len(rows[0]) if rows else 0
    for c in range(ncol):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] / p[c]
                rows[i] = [a - f * b for a, b in zip(rows[i], p)]
        rank += 1
    return rank


def _null_vector(rows: list, n: int) -> Optional[list]:
    """A nonzero d with rows . d = 0, or None if the rows have rank n."""
    rows = [list(r) for r in rows]
    pivots = []
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        inv = 1 / p[c]
        rows[rank] = p = [v * inv for v in p]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], p)]
        pivots.append(c)
        rank += 1
    free = next((c for c in range(n) if c not in pivots), None)
    if free is None:
        return None
    d = [Fraction(0)] * n
    d[free] = Fraction(1)
    for r, c in enumerate(pivots):
        d[c] = -rows[r][free]
    return d


def _to_vertex(p: LpProblem, x: list) -> list:
    """Slide along the optimal face until the active constraints have rank n."""
    n = p.n
    while True:
        active = [r for r, bi in zip(p.A, p.b) if sum(a * t for a, t in zip(r, x)) == bi]
        d = _null_vector(active + p.A_eq, n)
        if d is None:
            return x
        # the objective is constant along d (x is optimal and d is two-sided feasible)
        for sign in (1, -1):
            steps = []
            for r, bi in zip(p.A, p.b):
                rd = sign * sum(a * t for a, t in zip(r, d))
                if rd > 0:
                    steps.append((bi - sum(a * t for a, t in zip(r, x))) / rd)
            if steps:
                t = sign * min(steps)
                break
        else:
            return x
        x = [a + t * b for a, b in zip(x, d)]


def solve_lp(p: LpProblem) -> LpOutcome:
    n = p.n
    m_in, m_eq = len(p.A), len(p.A_eq)
    m = m_in + m_eq
    # columns: x+ (n), x- (n), slacks (m_in), artificials (m)
    n_struct = 2 * n + m_in
    ncol = n_struct + m
    rows, rhs = [], []
    for i in range(m):
        if i < m_in:
            a, bi = p.A[i], p.b[i]
        else:
            a, bi = p.A_eq[i - m_in], p.b_eq[i - m_in]
        row = list(a) + [-v for v in a] + [Fraction(int(i == k)) for k in range(m_in)]
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
        row += [Fraction(int(i == k)) for k in range(m)]
        rows.append(row)
        rhs.append(bi)
    tab = _Tableau(rows, rhs, [n_struct + i for i in range(m)])

    phase1 = [Fraction(0)] * n_struct + [Fraction(-1)] * m
    tab.run(phase1, range(ncol))
    if any(tab.rhs[i] != 0 for i, j in enumerate(tab.basis) if j >= n_struct):
        return LpOutcome(INFEASIBLE)
    # drive zero-level artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tab.basis):
        if tab.basis[i] >= n_struct:
            q = next((j for j in range(n_struct) if tab.rows[i][j]), None)
            if q is None:
                del tab.rows[i], tab.rhs[i], tab.basis[i]
                continue
            tab.pivot(i, q)
        i += 1
    tab.rows = [r[:n_struct] for r in tab.rows]

    obj = list(p.c) + [-v for v in p.c] + [Fraction(0)] * m_in
    q = tab.run(obj, range(n_struct))
    if q is not None:
        dz = [Fraction(0)] * n_struct
        dz[q] = Fraction(1)
        for i, j in enumerate(tab.basis):
            dz[j] = -tab.rows[i][q]
        ray = [dz[j] - dz[n + j] for j in range(n)]
        return LpOutcome(UNBOUNDED, ray=ray)
    z = tab.values(n_struct)
    x = [z[j] - z[n + j] for j in range(n)]
    if n and _rank(p.A + p.A_eq) == n:
        x = _to_vertex(p, x)
    return LpOutcome(OPTIMAL, x, sum(a * t for a, t in zip(p.c, x)))


@dataclass
class Box:
    """Per-variable [lo, hi]; None marks an unbounded direction."""
    lo_i: Optional[Fraction]
    hi_i: Optional[Fraction]
    lo_j: Optional[Fraction]
    hi_j: Optional[Fraction]

    def bounded(self) -> bool:
        return None not in (self.lo_i, self.hi_i, self.lo_j, self.hi_j)


def bounds_2d(p: LpProblem, i: int, j: int):
    """Range of x_i and x_j over the feasible region; INFEASIBLE if empty."""
    out = []
    for var in (i, j):
        for sign in (-1, 1):
            c = [Fraction(0)] * p.n
            c[var] = Fraction(sign)
            res = solve_lp(p.with_objective(c))
            if res.status == INFEASIBLE:
                return INFEASIBLE
            out.append(None if res.status == UNBOUNDED else res.x[var])
    return Box(*out)
