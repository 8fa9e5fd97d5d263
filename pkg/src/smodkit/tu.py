"""Exact total-unimodularity testing for small matrices.

Three layers: an entry check, a Ghouila-Houri signing search for wide
matrices with few columns, and an exhaustive minor scan (smallest size first,
so the reported witness is minimal).  Everything is exponential and meant for
desk-scale inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .polymatrix import IntMatrix, Selector, first_violation

BRUTE_FORCE_BELOW = 8
GHOUILA_HOURI_MAX_COLS = 18


@dataclass(frozen=True)
class TuVerdict:
    is_tu: bool
    witness: Optional[tuple] = None  # (Selector, det)

    def __bool__(self) -> bool:
        return self.is_tu

    def to_json(self) -> dict:
        out = {"totally_unimodular": self.is_tu}
        if self.witness is not None:
            sel, d = self.witness
            out["witness"] = {**sel.to_json(), "det": d}
        return out


def _unimodular(v) -> bool:
    return -1 <= v <= 1


def minor_scan(A: IntMatrix) -> TuVerdict:
    """Every square minor, smallest size first, lexicographic within a size."""
    hit = first_violation(A.entries, _unimodular)
    if hit is None:
        return TuVerdict(True)
    return TuVerdict(False, hit)


def _has_equitable_signing(cols: list) -> bool:
    """Signs e_j with every row sum of e_j * col_j in {-1, 0, 1}."""
    m = len(cols[0])
    # rows touched by later columns, to bound the remaining freedom
    remaining = [[0] * m for _ in range(len(cols) + 1)]
    for k in range(len(cols) - 1, -1, -1):
        remaining[k] = [r + abs(c) for r, c in zip(remaining[k + 1], cols[k])]

    def rec(k, sums):
        if k == len(cols):
            return True
        for s in (1, -1):
            new = [t + s * c for t, c in zip(sums, cols[k])]
            if all(abs(t) - r <= 1 for t, r in zip(new, remaining[k + 1])):
                if rec(k + 1, new):
                    return True
            if k == 0:
                break  # a global sign flip is free
        return False

    return rec(0, [0] * m)


def ghouila_houri(A: IntMatrix) -> bool:
    """TU iff every column subset admits an equitable signing."""
    cols = [list(A.col(j)) for j in range(A.cols)]
    for k in range(1, A.cols + 1):
        for J in itertools.combinations(range(A.cols), k):
            if not _has_equitable_signing([cols[j] for j in J]):
                return False
    return True


def is_totally_unimodular(A: IntMatrix) -> TuVerdict:
    if not A.rows or not A.cols:
        return TuVerdict(True)
    for i, row in enumerate(A.entries):
        for j, e in enumerate(row):
            if not _unimodular(e):
                return TuVerdict(False, (Selector((i,), (j,)), e))
    if min(A.rows, A.cols) < BRUTE_FORCE_BELOW:
        return minor_scan(A)
    B = A if A.cols <= A.rows else A.T
    if B.cols <= GHOUILA_HOURI_MAX_COLS and ghouila_houri(B):
        return TuVerdict(True)
    return minor_scan(A)
