"""Dense matrices over Z and Z[x] with exact determinants.

Two concrete types keep the parametric and the evaluated world apart:
``PolyMatrix`` holds ``Poly`` entries, ``IntMatrix`` holds Python ints.  The
only bridge from ints to polynomials is :meth:`IntMatrix.to_poly`, the only
bridge back is :func:`evaluate`.
"""

from __future__ import annotations

import itertools
import math
from typing import Callable, Iterator, NamedTuple, Optional, Sequence

from .polyring import ONE, ZERO, Poly, parse_poly


class MatrixError(ValueError):
    pass


class NotSquare(MatrixError):
    pass


class BadSelector(MatrixError):
    pass


class BadK(MatrixError):
    pass


class Selector(NamedTuple):
    rows: tuple
    cols: tuple

    @property
    def size(self) -> int:
        return len(self.rows)

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols)}


class _Matrix:
    __slots__ = ("entries",)
    _zero = 0

    def __init__(self, entries: Sequence[Sequence]):
        rows = tuple(tuple(self._coerce(v) for v in r) for r in entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise MatrixError("ragged rows")
        self.entries = rows

    @staticmethod
    def _coerce(v):
        return v

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> tuple:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return type(self) is type(other) and self.entries == other.entries

    def __hash__(self):
        return hash((type(self).__name__, self.entries))

    def __iter__(self):
        return iter(self.entries)

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    @property
    def T(self):
        return type(self)(list(zip(*self.entries))) if self.entries else type(self)([])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]):
        return type(self)([[self.entries[i][j] for j in cols] for i in rows])

    def select(self, sel: Selector):
        return self.submatrix(sel.rows, sel.cols)

    def map(self, f: Callable):
        return type(self)([[f(v) for v in r] for r in self.entries])

    def __add__(self, other):
        _check_same_shape(self, other)
        return type(self)([[u + w for u, w in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        _check_same_shape(self, other)
        return type(self)([[u - w for u, w in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __neg__(self):
        return self.map(lambda v: -v)

    def scale(self, c):
        return self.map(lambda v: v * c)

    def __repr__(self):
        return f"{type(self).__name__}({[[str(v) for v in r] for r in self.entries]})"


def _check_same_shape(a, b):
    if a.shape != b.shape:
        raise MatrixError(f"shape mismatch {a.shape} vs {b.shape}")


class IntMatrix(_Matrix):
    __slots__ = ()

    @staticmethod
    def _coerce(v):
        if isinstance(v, bool) or not isinstance(v, int):
            if isinstance(v, Poly) and v.is_constant():
                return v.constant_term()
            raise MatrixError(f"IntMatrix entries must be integers, got {v!r}")
        return v

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(m)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def outer(cls, u: Sequence[int], v: Sequence[int]) -> "IntMatrix":
        return cls([[a * b for b in v] for a in u])

    def to_poly(self) -> "PolyMatrix":
        return PolyMatrix([[Poly((v,)) for v in r] for r in self.entries])

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [list(r) for r in self.entries]}

    @classmethod
    def from_json(cls, obj) -> "IntMatrix":
        entries = _entries_from_json(obj)
        return cls([[_json_int(v) for v in r] for r in entries])


class PolyMatrix(_Matrix):
    __slots__ = ()

    @staticmethod
    def _coerce(v):
        if isinstance(v, Poly):
            return v
        if isinstance(v, int) and not isinstance(v, bool):
            return Poly((v,))
        if isinstance(v, str):
            return parse_poly(v)
        raise MatrixError(f"PolyMatrix entries must be polynomials, got {v!r}")

    @classmethod
    def affine(cls, T: IntMatrix, R: IntMatrix) -> "PolyMatrix":
        """The matrix ``T + x*R``."""
        _check_same_shape(T, R)
        return cls([[Poly((t, r)) for t, r in zip(tr, rr)] for tr, rr in zip(T.entries, R.entries)])

    def coefficient_matrix(self, i: int) -> IntMatrix:
        return IntMatrix([[p.coeff(i) for p in r] for r in self.entries])

    def max_degree(self) -> int:
        return max((len(p.coeffs) - 1 for r in self.entries for p in r), default=-1)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [[str(p) for p in r] for r in self.entries]}

    @classmethod
    def from_json(cls, obj) -> "PolyMatrix":
        return cls(_entries_from_json(obj))


def _json_int(v) -> int:
    if isinstance(v, bool):
        raise MatrixError("booleans are not matrix entries")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        p = parse_poly(v)
        if p.is_constant():
            return p.constant_term()
    raise MatrixError(f"expected an integer entry, got {v!r}")


def _entries_from_json(obj) -> list:
    if isinstance(obj, list):
        return obj
    if not isinstance(obj, dict) or "entries" not in obj:
        raise MatrixError("matrix JSON needs an 'entries' array")
    entries = obj["entries"]
    m = obj.get("rows", len(entries))
    n = obj.get("cols", len(entries[0]) if entries else 0)
    if len(entries) != m or any(len(r) != n for r in entries):
        raise MatrixError(f"declared shape {m}x{n} does not match entries")
    return entries


# -- determinants ------------------------------------------------------------------

def _exact_div(a, b):
    if isinstance(a, Poly):
        return a.exact_div(b)
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("inexact division in Bareiss elimination")
    return q


def bareiss_det(rows: Sequence[Sequence], one=1):
    """Fraction-free Gaussian elimination over an integral domain."""
    n = len(rows)
    if n == 0:
        return one
    a = [list(r) for r in rows]
    sign = 1
    prev = one
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return one * 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai = a[i]
            ak = a[k]
            for j in range(k + 1, n):
                ai[j] = _exact_div(ai[j] * akk - aik * ak[j], prev)
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def laplace_det(rows: Sequence[Sequence], one=1):
    """Cofactor expansion along the first row; exponential, used as an oracle."""
    n = len(rows)
    if n == 0:
        return one
    if n == 1:
        return rows[0][0]
    total = one * 0
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * laplace_det(minor, one)
        total = total + term if j % 2 == 0 else total - term
    return total


def det(M: _Matrix):
    """Exact determinant.  The 0x0 matrix has determinant 1."""
    if not M.is_square():
        raise NotSquare(f"determinant of a {M.rows}x{M.cols} matrix")
    one = ONE if isinstance(M, PolyMatrix) else 1
    return bareiss_det([list(r) for r in M.entries], one)


def _check_k(M: _Matrix, k: int):
    if not 1 <= k <= min(M.rows, M.cols):
        raise BadK(f"k={k} outside 1..{min(M.rows, M.cols)}")


def selectors(m: int, n: int, k: int) -> Iterator[Selector]:
    for r in itertools.combinations(range(m), k):
        for c in itertools.combinations(range(n), k):
            yield Selector(r, c)


def subdeterminants(M: _Matrix, k: int) -> Iterator[tuple[Selector, object]]:
    """Every k x k minor, in lexicographic order of (row set, column set)."""
    _check_k(M, k)
    one = ONE if isinstance(M, PolyMatrix) else 1
    for sel in selectors(M.rows, M.cols, k):
        sub = [[M.entries[i][j] for j in sel.cols] for i in sel.rows]
        yield sel, bareiss_det(sub, one)


def minor_levels(entries: Sequence[Sequence], max_k: Optional[int] = None) -> Iterator[tuple[int, dict]]:
    """Yield ``(k, {(rows, cols): det})`` for k = 1, 2, ...

    Level k is computed from level k-1 by expansion along the first selected
    row, so a full scan costs O(k) ring operations per minor.
    """
    m = len(entries)
    n = len(entries[0]) if m else 0
    top = min(m, n) if max_k is None else min(m, n, max_k)
    if top < 1:
        return
    prev = {((i,), (j,)): entries[i][j] for i in range(m) for j in range(n)}
    yield 1, prev
    for k in range(2, top + 1):
        cur = {}
        for rows in itertools.combinations(range(m), k):
            r0 = entries[rows[0]]
            rest = rows[1:]
            for cols in itertools.combinations(range(n), k):
                acc = None
                for t, c in enumerate(cols):
                    e = r0[c]
                    if not e:
                        continue
                    sub = prev[(rest, cols[:t] + cols[t + 1:])]
                    if not sub:
                        continue
                    term = e * sub
                    if acc is None:
                        acc = term if t % 2 == 0 else -term
                    else:
                        acc = acc + term if t % 2 == 0 else acc - term
                cur[(rows, cols)] = acc if acc is not None else r0[cols[0]] * 0
        yield k, cur
        prev = cur


def first_violation(entries: Sequence[Sequence], allowed: Callable[[object], bool],
                    max_k: Optional[int] = None) -> Optional[tuple[Selector, object]]:
    """Smallest k first, then lexicographic: the first minor failing ``allowed``."""
    for k, level in minor_levels(entries, max_k):
        for key in sorted(level):
            val = level[key]
            if not allowed(val):
                return Selector(*key), val
    return None


def evaluate(M: PolyMatrix, a: int) -> IntMatrix:
    return IntMatrix([[p.eval(a) for p in r] for r in M.entries])


def rank(M: _Matrix) -> int:
    """Rank over the fraction field, by fraction-free row reduction."""
    a = [list(r) for r in M.entries]
    m, n = M.rows, M.cols
    r = 0
    prev = ONE if isinstance(M, PolyMatrix) else 1
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, m):
            f = a[i][c]
            a[i] = [_exact_div(a[i][j] * p - f * a[r][j], prev) for j in range(n)]
        prev = p
        r += 1
        if r == m:
            break
    return r


# -- determinant identities --------------------------------------------------------

def _validate_selector(M: _Matrix, sel: Selector):
    n = M.rows
    for idx in (sel.rows, sel.cols):
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise BadSelector("selector indices must be strictly increasing")
        if idx and (idx[0] < 0 or idx[-1] >= n):
            raise BadSelector("selector index out of range")
    if len(sel.rows) != len(sel.cols):
        raise BadSelector("selector must be square")


def _bordered(M: _Matrix, sel: Selector):
    """Complementary index sets and the matrix of det A[i, j] (sorted index order)."""
    n = M.rows
    I = [i for i in range(n) if i not in sel.rows]
    J = [j for j in range(n) if j not in sel.cols]
    D = []
    for i in I:
        rows = sorted(sel.rows + (i,))
        line = []
        for j in J:
            cols = sorted(sel.cols + (j,))
            line.append(det(M.submatrix(rows, cols)))
        D.append(line)
    return I, J, D


def sylvester_residual(M: _Matrix, sel: Selector):
    """``det M * det(A)**(n-1-k) - det(bordered minors)``; identically zero."""
    if not M.is_square():
        raise NotSquare("Sylvester identity needs a square matrix")
    _validate_selector(M, sel)
    n, k = M.rows, sel.size
    if k > n - 1:
        raise BadSelector(f"k={k} must be at most n-1={n - 1}")
    one = ONE if isinstance(M, PolyMatrix) else 1
    dA = det(M.select(sel)) if k else one
    _, _, D = _bordered(M, sel)
    return det(M) * dA ** (n - 1 - k) - bareiss_det(D, one)


class DJParts(NamedTuple):
    detM_detA: object
    d11: object
    d12: object
    d21: object
    d22: object

    def residual(self):
        return self.detM_detA - (self.d11 * self.d22 - self.d12 * self.d21)


def desnanot_jacobi_parts(M: _Matrix, sel: Selector) -> DJParts:
    """The five determinants of the Desnanot-Jacobi identity for an (n-2)-minor."""
    if not M.is_square():
        raise NotSquare("Desnanot-Jacobi needs a square matrix")
    _validate_selector(M, sel)
    if sel.size != M.rows - 2:
        raise BadSelector(f"need an (n-2)x(n-2) selector, got size {sel.size}")
    one = ONE if isinstance(M, PolyMatrix) else 1
    dA = det(M.select(sel)) if sel.size else one
    _, _, D = _bordered(M, sel)
    return DJParts(det(M) * dA, D[0][0], D[0][1], D[1][0], D[1][1])


def kronecker_base(M: PolyMatrix, extra: int = 1) -> int:
    """A base large enough that every minor of ``M`` is recoverable from its
    value at that base (balanced digits): 2 * l! * (max L1 norm)**l < base."""
    n = min(M.rows, M.cols)
    l1 = max((sum(abs(c) for c in p.coeffs) for r in M.entries for p in r), default=1)
    l1 = max(l1, 1, extra)
    bound = math.factorial(n) * l1 ** n
    return 1 << (2 * bound + 2).bit_length()
