"""Total S-modularity, forbidden minors, F(S) candidates and I(S).

A matrix over Z[x] is totally S-modular when every square subdeterminant lies
in the finite set ``S``.  A square matrix is a forbidden minor for ``S`` when
all its maximal proper submatrices are totally S-modular but its own
determinant is not in ``S``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .polymatrix import (
    IntMatrix,
    MatrixError,
    PolyMatrix,
    Selector,
    det,
    first_violation,
    kronecker_base,
)
from .polyring import ONE, X, ZERO, Poly, gcd, integer_roots, kronecker_decode, parse_poly


class SmodError(ValueError):
    pass


class TooSmall(SmodError):
    pass


class DegenerateS(SmodError):
    pass


class DimensionTooSmall(SmodError):
    pass


class BadEntries(SmodError):
    pass


def sorted_polys(ps: Iterable[Poly]) -> list[Poly]:
    return sorted(ps, key=Poly.sort_key)


class SSet:
    """A finite set of polynomials, optionally closed under negation."""

    __slots__ = ("elements", "pm_closed")

    def __init__(self, elements: Iterable[Union[Poly, int, str]], pm_closed: bool = True):
        polys = {p if isinstance(p, Poly) else parse_poly(p) if isinstance(p, str) else Poly((p,))
                 for p in elements}
        if pm_closed:
            polys |= {-p for p in polys}
        self.elements = frozenset(polys)
        self.pm_closed = pm_closed or all(-p in polys for p in polys)

    @classmethod
    def pm(cls, *elements) -> "SSet":
        return cls(elements, pm_closed=True)

    def __contains__(self, p) -> bool:
        return Poly.coerce(p) in self.elements

    def __iter__(self):
        return iter(sorted_polys(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, SSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"SSet({[str(p) for p in self]})"

    def nonzero(self) -> list[Poly]:
        return [p for p in self if p]

    def max_abs(self) -> Poly:
        return max((abs(p) for p in self.elements), key=Poly.sort_key)

    def max_degree(self) -> int:
        return max((len(p.coeffs) - 1 for p in self.elements), default=-1)

    def evaluate(self, a: int) -> set[int]:
        return {p.eval(a) for p in self.elements}

    def to_json(self) -> dict:
        if self.pm_closed:
            reps = sorted_polys({abs(p) for p in self.elements})
        else:
            reps = list(self)
        return {"pm_closed": self.pm_closed, "elements": [str(p) for p in reps]}

    @classmethod
    def from_json(cls, obj) -> "SSet":
        if isinstance(obj, list):
            return cls(obj, pm_closed=False)
        if not isinstance(obj, dict) or "elements" not in obj:
            raise SmodError("S-set JSON needs an 'elements' array")
        return cls([parse_poly(e) if not isinstance(e, int) else e for e in obj["elements"]],
                   pm_closed=bool(obj.get("pm_closed", False)))


FIVE_SET = SSet.pm(0, 1, X, X + 1, 2 * X + 1)
FOUR_SET = SSet.pm(0, X, X + 1, 2 * X + 1)
CONFLICT_SET = SSet.pm(0, X, X + 1)


def evaluate_sset(S: SSet, a: int) -> set[int]:
    return S.evaluate(a)


# -- total S-modularity ------------------------------------------------------------

@dataclass(frozen=True)
class MinorWitness:
    selector: Selector
    value: object
    verdict: str  # "NotInS" or "ForbiddenMinor"

    def to_json(self) -> dict:
        return {**self.selector.to_json(), "value": str(self.value), "verdict": self.verdict}


@dataclass(frozen=True)
class SmodResult:
    ok: bool
    witness: Optional[MinorWitness] = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out = {"totally_s_modular": self.ok}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _encoded_violation(M: PolyMatrix, S: SSet, max_k=None):
    """First violating minor, computed on Kronecker-encoded integers."""
    extra = max((abs(c) for p in S.elements for c in p.coeffs), default=1)
    base = kronecker_base(M, extra)
    enc = [[p.eval(base) for p in r] for r in M.entries]
    allowed = {p.eval(base) for p in S.elements}
    hit = first_violation(enc, allowed.__contains__, max_k)
    if hit is None:
        return None
    sel, val = hit
    return sel, kronecker_decode(val, base)


def is_totally_s_modular(M: Union[PolyMatrix, IntMatrix], S) -> SmodResult:
    """Check every k x k minor, k = 1..min(m, n).

    On failure the witness is the violating minor of smallest size, ties
    broken lexicographically by (rows, cols).  An ``IntMatrix`` is checked
    against an iterable of integers instead of an ``SSet``.
    """
    if isinstance(M, IntMatrix):
        if isinstance(S, SSet):
            if S.max_degree() > 0:
                raise SmodError("integer matrices are checked against an evaluated set S(a)")
            allowed = S.evaluate(0)
        else:
            allowed = set(S)
        hit = first_violation(M.entries, allowed.__contains__)
    else:
        if not isinstance(S, SSet):
            S = SSet(S, pm_closed=False)
        hit = _encoded_violation(M, S) if M.rows and M.cols else None
    if hit is None:
        return SmodResult(True)
    sel, val = hit
    return SmodResult(False, MinorWitness(sel, val, "NotInS"))


def is_totally_s_modular_at(M: PolyMatrix, S: SSet, a: int) -> SmodResult:
    """The evaluated check: is ``M(a)`` totally ``S(a)``-modular?"""
    from .polymatrix import evaluate

    return is_totally_s_modular(evaluate(M, a), S.evaluate(a))


def is_forbidden_minor(M: PolyMatrix, S: SSet) -> bool:
    if not M.is_square():
        raise MatrixError("forbidden minors are square")
    n = M.rows
    if n < 2:
        raise TooSmall("forbidden minors have size at least 2")
    if _encoded_violation(M, S, max_k=n - 1) is not None:
        return False
    return det(M) not in S


# -- F(S) candidates ------------------------------------------------------------------

def two_by_two_fs(S: SSet) -> set[Poly]:
    """Determinants of 2x2 forbidden minors: s1*s4 - s2*s3 outside S."""
    elems = list(S.elements)
    prods = {p * q for p in elems for q in elems}
    return {p - q for p in prods for q in prods} - S.elements


def filter_applicable(S: SSet) -> bool:
    """When the |d|-uniqueness filter is sound: nonzero elements pairwise coprime
    (or equal up to sign), and 2 not in S."""
    if Poly((2,)) in S.elements:
        return False
    nz = [p for p in S.elements if p]
    for y, z in itertools.combinations(nz, 2):
        if abs(y) == abs(z):
            continue
        if gcd(y, z) != ONE:
            return False
    return True


@dataclass
class FsReport:
    two_by_two: set = field(default_factory=set)
    higher_candidates_prefilter: set = field(default_factory=set)
    higher_candidates_filtered: set = field(default_factory=set)
    filter_applicable: bool = False
    unresolved: set = field(default_factory=set)
    divisors: dict = field(default_factory=dict)

    def candidates(self) -> set:
        """``filtered | D``: the superset of F(S) used for intersections."""
        return self.higher_candidates_filtered | self.two_by_two

    def to_json(self) -> dict:
        return {
            "two_by_two": [str(p) for p in sorted_polys(self.two_by_two)],
            "higher_candidates_prefilter": [str(p) for p in sorted_polys(self.higher_candidates_prefilter)],
            "higher_candidates_filtered": [str(p) for p in sorted_polys(self.higher_candidates_filtered)],
            "filter_applicable": self.filter_applicable,
            "unresolved": [str(p) for p in sorted_polys(self.unresolved)],
        }


def dj_representations(S: SSet) -> dict[Poly, set[Poly]]:
    """Map p -> {|d|} over all solutions of p*d = s1*s2 - s3*s4 with d in S, d != 0."""
    elems = list(S.elements)
    prods = {p * q for p in elems for q in elems}
    diffs = {p - q for p in prods for q in prods}
    reps: dict[Poly, set[Poly]] = {}
    for d in {abs(p) for p in elems if p}:
        for q in diffs:
            p, ok = q.divmod_exact(d)
            if ok:
                reps.setdefault(p, set()).add(d)
    return reps


def enumerate_fs_candidates(S: SSet, max_degree: int = 1) -> FsReport:
    """Candidate determinants of forbidden minors of size >= 3.

    Every such determinant p satisfies p*d = s1*s2 - s3*s4 for some nonzero
    d in S (an (n-2)-minor) and s_i in S.  Candidates whose representations all
    share one |d| are dropped when :func:`filter_applicable` holds, since such a
    minor would have all its invertible (n-2)-minors equal in absolute value.
    ``+-1`` is never dropped: a totally unimodular forbidden minor escapes that
    argument.  Candidates above ``max_degree`` that survive the filter are
    reported as unresolved.
    """
    reps = dj_representations(S)
    applicable = filter_applicable(S)
    low, high = set(), set()
    for p, ds in reps.items():
        if p in S.elements:
            continue
        (low if len(p.coeffs) - 1 <= max_degree else high).add(p)

    def survives(p):
        return not applicable or len(reps[p]) > 1 or abs(p) == ONE

    return FsReport(
        two_by_two=two_by_two_fs(S),
        higher_candidates_prefilter=low,
        higher_candidates_filtered={p for p in low if survives(p)},
        filter_applicable=applicable,
        unresolved={p for p in high if survives(p)},
        divisors={p: reps[p] for p in low | high},
    )


def intersection_set(S: SSet, F: Iterable[Poly]) -> set[int]:
    """Integers a with s(a) = f(a) for some s in S, f in F, s != f."""
    out = set()
    for s in S.elements:
        for f in F:
            if s != f:
                out |= integer_roots(s - f)
    return out


def fs_bound(S: SSet) -> Poly:
    """2 * max|s|^2, an upper bound on |det| of any forbidden minor."""
    if all(p.is_zero() for p in S.elements):
        raise DegenerateS("S must contain a nonzero element")
    tau = S.max_abs()
    return 2 * tau * tau


def ceil_log2_plus_one(tau: int) -> int:
    """ceil(log2(tau) + 1), exactly."""
    if tau < 1:
        raise ValueError("tau must be positive")
    return (tau - 1).bit_length() + 1


def log_bound(tau: int, n: int) -> int:
    """|det| bound for integer forbidden minors of dimension n >= ceil(log2 tau + 1)."""
    k = ceil_log2_plus_one(tau)
    if n < k:
        raise DimensionTooSmall(f"n={n} below ceil(log2 {tau} + 1) = {k}")
    return 2 * k * tau


# -- the {x, x+1} conflict pattern ----------------------------------------------------

@dataclass(frozen=True)
class ConflictResult:
    ordered: bool
    selector: Optional[Selector] = None

    def to_json(self) -> dict:
        if self.ordered:
            return {"status": "Ordered"}
        return {"status": "Conflict", **self.selector.to_json()}


def conflict_free_check(M: PolyMatrix) -> ConflictResult:
    """For entries in {x, x+1}: look for a 2x2 submatrix ((x+1,x),(x,x+1)) or its
    column swap.  Without one, rows and columns can be totally ordered."""
    xp1 = X + 1
    for r in M.entries:
        for p in r:
            if p != X and p != xp1:
                raise BadEntries(f"entry {p} not in {{x, x+1}}")
    E = M.entries
    for i1, i2 in itertools.combinations(range(M.rows), 2):
        for j1, j2 in itertools.combinations(range(M.cols), 2):
            a, b, c, d = E[i1][j1], E[i1][j2], E[i2][j1], E[i2][j2]
            if a == d and b == c and a != b:
                return ConflictResult(False, Selector((i1, i2), (j1, j2)))
    return ConflictResult(True)
