"""Affine rank-1 structure M(a) = T + a*u*v^T and the parametric determinant lemma."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .polymatrix import IntMatrix, MatrixError, NotSquare, det
from .polyring import Poly


class DecomposeError(ValueError):
    pass


class NoDecomposition(DecomposeError):
    def __init__(self, msg, position=None):
        super().__init__(msg)
        self.position = position


class AmbiguousParameter(DecomposeError):
    pass


class NotRankOne(DecomposeError):
    def __init__(self, msg, rows=None):
        super().__init__(msg)
        self.rows = rows


class ZeroMatrix(DecomposeError):
    pass


@dataclass(frozen=True)
class Decomposition:
    T: IntMatrix
    u: tuple
    v: tuple
    a: int

    def matrix(self) -> IntMatrix:
        return self.T + IntMatrix.outer(self.u, self.v).scale(self.a)

    def update(self) -> IntMatrix:
        return IntMatrix.outer(self.u, self.v)

    def tbar(self) -> IntMatrix:
        """T - u*v^T, the evaluation of T + x*u*v^T at x = -1."""
        return self.T - self.update()

    def to_json(self) -> dict:
        return {"T": self.T.to_json(), "u": list(self.u), "v": list(self.v), "a": self.a}

    @classmethod
    def from_json(cls, obj) -> "Decomposition":
        if not isinstance(obj, dict) or not {"T", "u", "v", "a"} <= set(obj):
            raise DecomposeError("decomposition JSON needs T, u, v, a")
        T = IntMatrix.from_json(obj["T"])
        u, v = tuple(int(t) for t in obj["u"]), tuple(int(t) for t in obj["v"])
        if len(u) != T.rows or len(v) != T.cols:
            raise DecomposeError("u, v lengths do not match T")
        return cls(T, u, v, int(obj["a"]))


def split_affine(M: IntMatrix, a: int, allowed: Iterable[int]) -> tuple[IntMatrix, IntMatrix]:
    """Unique T with entries in ``allowed`` and T = M (mod a); R = (M - T) / a."""
    allowed = sorted(set(allowed))
    if abs(a) < 3 or not allowed or allowed[-1] - allowed[0] >= abs(a):
        raise AmbiguousParameter(f"a={a} does not separate residues of {allowed}")
    by_residue = {t % a: t for t in allowed}
    T, R = [], []
    for i, row in enumerate(M.entries):
        trow, rrow = [], []
        for j, m in enumerate(row):
            t = by_residue.get(m % a)
            if t is None:
                raise NoDecomposition(f"entry {m} at ({i},{j}) has no residue in {allowed} mod {a}", (i, j))
            trow.append(t)
            rrow.append((m - t) // a)
        T.append(trow)
        R.append(rrow)
    return IntMatrix(T), IntMatrix(R)


def rank1_factor(R: IntMatrix) -> tuple[tuple, tuple]:
    """Integer u, v with R = u*v^T; v primitive with first nonzero entry positive."""
    first = next((r for r in R.entries if any(r)), None)
    if first is None:
        raise ZeroMatrix("rank-1 factor of a zero matrix")
    g = 0
    for t in first:
        g = gcd(g, t)
    lead = next(t for t in first if t)
    if lead < 0:
        g = -g
    v = tuple(t // g for t in first)
    vv = sum(t * t for t in v)
    u = []
    for i, row in enumerate(R.entries):
        q, r = divmod(sum(s * t for s, t in zip(row, v)), vv)
        if r or any(s != q * t for s, t in zip(row, v)):
            i0 = R.entries.index(first)
            raise NotRankOne(f"rows {i0} and {i} are not proportional", (i0, i))
        u.append(q)
    return tuple(u), v


@dataclass(frozen=True)
class SignMasks:
    rows: tuple  # True where row i was multiplied by -1
    cols: tuple

    def apply(self, M: IntMatrix) -> IntMatrix:
        return IntMatrix([[(-e if fr != fc else e) for e, fc in zip(r, self.cols)]
                          for r, fr in zip(M.entries, self.rows)])


def sign_normalize(d: Decomposition) -> tuple[Decomposition, SignMasks]:
    """Flip rows and columns so u, v >= 0.  T transforms with the same flips,
    and so must M, b (rows) and c (columns) of any attached instance."""
    rows = tuple(t < 0 for t in d.u)
    cols = tuple(t < 0 for t in d.v)
    masks = SignMasks(rows, cols)
    return Decomposition(masks.apply(d.T), tuple(abs(t) for t in d.u),
                         tuple(abs(t) for t in d.v), d.a), masks


def matrix_det_lemma(T: IntMatrix, u: Sequence[int], v: Sequence[int]) -> Poly:
    """det(T + x*u*v^T) = (det T - det(T - u*v^T)) * x + det T."""
    if not T.is_square():
        raise NotSquare(f"determinant of a {T.rows}x{T.cols} matrix")
    if len(u) != T.rows or len(v) != T.cols:
        raise MatrixError("u, v lengths do not match T")
    d0 = det(T)
    d1 = det(T - IntMatrix.outer(u, v))
    return Poly((d0, d0 - d1))


def lift_entries(M: IntMatrix, a: int, S) -> tuple[IntMatrix, IntMatrix]:
    """Lift each entry m to the unique s in S (degree <= 1) with s(a) = m.

    Returns (T, R) with the lift equal to T + x*R.  Unlike :func:`split_affine`
    this works for any a at which the evaluation is injective on S, including
    small |a|.
    """
    table: dict[int, Poly] = {}
    for s in S:
        if s.degree > 1:
            raise DecomposeError("lift needs a set of degree at most one")
        val = s.eval(a)
        if val in table and table[val] != s:
            raise AmbiguousParameter(f"{table[val]} and {s} agree at a={a}")
        table[val] = s
    T, R = [], []
    for i, row in enumerate(M.entries):
        trow, rrow = [], []
        for j, m in enumerate(row):
            s = table.get(m)
            if s is None:
                raise NoDecomposition(f"entry {m} at ({i},{j}) is not in S({a})", (i, j))
            trow.append(s.coeff(0))
            rrow.append(s.coeff(1))
        T.append(trow)
        R.append(rrow)
    return IntMatrix(T), IntMatrix(R)
