"""Recognition of totally +-{0, 1, a, a+1, 2a+1}-modular integer matrices.

Such a matrix is T + a*u*v^T with T entries in {-1, 0, 1}, and it qualifies
exactly when T and T - u*v^T are both totally unimodular.  For a in {-1, 0}
the allowed set collapses to +-{0, 1} and the question is plain total
unimodularity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .decompose import (
    Decomposition,
    NoDecomposition,
    NotRankOne,
    rank1_factor,
    split_affine,
)
from .polymatrix import IntMatrix
from .tu import is_totally_unimodular

EXCLUDED = frozenset({-3, -2, 1, 2})

YES = "Yes"
YES_TU = "Yes_TU"
NO = "No"


class ParameterExcluded(ValueError):
    pass


@dataclass(frozen=True)
class RecognitionResult:
    verdict: str
    decomposition: Optional[Decomposition] = None
    reason: Optional[str] = None
    certificate: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.verdict != NO

    def to_json(self) -> dict:
        out = {"verdict": self.verdict}
        if self.decomposition is not None:
            out["decomposition"] = self.decomposition.to_json()
        if self.reason is not None:
            out["reason"] = self.reason
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def allowed_values(a: int) -> set[int]:
    """S(a) for S = +-{0, 1, x, x+1, 2x+1}."""
    base = {0, 1, a, a + 1, 2 * a + 1}
    return base | {-v for v in base}


def _tu_witness(verdict) -> dict:
    sel, d = verdict.witness
    return {**sel.to_json(), "det": d}


def recognize(M: IntMatrix, a: int) -> RecognitionResult:
    if a in EXCLUDED:
        raise ParameterExcluded(f"a={a} is excluded: evaluation and symbolic checks disagree there")
    if a in (-1, 0):
        v = is_totally_unimodular(M)
        if v:
            return RecognitionResult(YES_TU)
        return RecognitionResult(NO, reason="NotTU", certificate=_tu_witness(v))
    try:
        T, R = split_affine(M, a, (-1, 0, 1))
    except NoDecomposition as e:
        i, j = e.position
        return RecognitionResult(NO, reason="NoAffineSplit",
                                 certificate={"row": i, "col": j, "entry": M.entries[i][j]})
    if not any(any(r) for r in R.entries):
        u, v = (0,) * M.rows, (0,) * M.cols
    else:
        try:
            u, v = rank1_factor(R)
        except NotRankOne as e:
            return RecognitionResult(NO, reason="NotRankOne",
                                     certificate={"rows": list(e.rows), "R": R.to_json()})
    d = Decomposition(T, u, v, a)
    tv = is_totally_unimodular(T)
    if not tv:
        return RecognitionResult(NO, d, "T_NotTU", _tu_witness(tv))
    bv = is_totally_unimodular(d.tbar())
    if not bv:
        return RecognitionResult(NO, d, "Tbar_NotTU", _tu_witness(bv))
    return RecognitionResult(YES, d)


def brute_force_check(M: IntMatrix, a: int):
    """Reference predicate: every minor of M lies in S(a).  Returns a
    ``(Selector, det)`` witness or None."""
    from .polymatrix import first_violation

    allowed = allowed_values(a)
    return first_violation(M.entries, allowed.__contains__)


def excluded_witness(a: int):
    """A 2x2 matrix over Z[x] that is a forbidden minor symbolically but whose
    evaluation at ``a`` is totally S(a)-modular, for a in the excluded set."""
    from .polymatrix import PolyMatrix

    if a in (1, 2):
        return PolyMatrix([["x", "1"], ["1", "1"]])  # det x-1: equals 0 at 1, 1 at 2
    if a in (-2, -3):
        return PolyMatrix([["x+1", "1"], ["-1", "1"]])  # det x+2: 0 at -2, -1 at -3
    raise ValueError(f"a={a} is not excluded")
