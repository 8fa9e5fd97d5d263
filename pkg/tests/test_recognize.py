import random

import pytest
from hypothesis import given, strategies as st

from instances import five_values, four_values, naive_minors
from reference_data import EXAMPLE_4X4, S5
from smodkit.polymatrix import IntMatrix, PolyMatrix, det, evaluate
from smodkit.recognize import (
    NO, YES, YES_TU, ParameterExcluded, allowed_values, brute_force_check, excluded_witness, recognize,
)
from smodkit.smodular import is_forbidden_minor, is_totally_s_modular


def naive_ok(M, a):
    allowed = five_values(a)
    return all(d in allowed for _, d in naive_minors(M))


def path_matrix(n):
    return IntMatrix([[int(i <= j) for j in range(n)] for i in range(n)])


def test_example_4x4_at_5():
    # det 1 is excluded only from the four-element set; with 1 allowed the
    # evaluation qualifies, and recognition must agree with the minor scan
    M = evaluate(PolyMatrix(EXAMPLE_4X4), 5)
    assert det(M) == 1 and naive_ok(M, 5)
    assert recognize(M, 5).verdict == YES
    assert not all(d in four_values(5) for _, d in naive_minors(M))


def test_path_plus_rank_one_is_yes():
    T = path_matrix(4)
    M = T + IntMatrix.outer([1] * 4, [1] * 4).scale(5)
    res = recognize(M, 5)
    assert res.verdict == YES and res.decomposition.T == T
    assert res.decomposition.u == (1, 1, 1, 1) and naive_ok(M, 5)


def test_no_affine_split():
    res = recognize(IntMatrix([[1, 3], [0, 1]]), 5)
    assert res.verdict == NO and res.reason == "NoAffineSplit"
    assert res.certificate == {"row": 0, "col": 1, "entry": 3}


def test_other_reasons():
    res = recognize(IntMatrix([[5, 0], [0, 5]]), 5)
    assert res.reason == "NotRankOne"
    res = recognize(IntMatrix([[1, 1, 0], [0, 1, 1], [1, 0, 1]]), 5)
    assert res.reason == "T_NotTU" and res.certificate["det"] == 2
    res = recognize(IntMatrix([[6, 4], [4, 6]]), 5)
    assert res.reason == "Tbar_NotTU" and abs(res.certificate["det"]) >= 2
    assert not naive_ok(IntMatrix([[6, 4], [4, 6]]), 5)


def test_tu_branch_and_zero_residue():
    assert recognize(path_matrix(3), 0).verdict == YES_TU
    res = recognize(IntMatrix([[1, 1], [-1, 1]]), -1)
    assert res.verdict == NO and res.reason == "NotTU"
    res = recognize(path_matrix(3), 4)
    assert res.verdict == YES and res.decomposition.u == (0, 0, 0)


def test_excluded_parameters():
    for a in (-3, -2, 1, 2):
        with pytest.raises(ParameterExcluded):
            recognize(IntMatrix([[1]]), a)


@pytest.mark.parametrize("a", [-3, -2, 1, 2])
def test_exclusion_is_genuine(a):
    W = excluded_witness(a)
    assert not is_totally_s_modular(W, S5)
    assert brute_force_check(evaluate(W, a), a) is None


def _random_candidate(rng, n, a):
    m = rng.randint(1, n)
    u = [rng.choice((0, 1, 1, -1, 2)) for _ in range(m)]
    v = [rng.choice((0, 1, 1, -1)) for _ in range(n)]
    T = [[rng.choice((0, 0, 1, -1)) for _ in range(n)] for _ in range(m)]
    M = IntMatrix([[T[i][j] + a * u[i] * v[j] for j in range(n)] for i in range(m)])
    if rng.random() < 0.3:
        i, j = rng.randrange(m), rng.randrange(n)
        rows = [list(r) for r in M.entries]
        rows[i][j] += rng.choice((-1, 1, a, -a))
        M = IntMatrix(rows)
    return M


@pytest.mark.parametrize("a", [-5, -4, 3, 4, 5])
def test_agrees_with_brute_force(a):
    rng = random.Random(a)
    yes = 0
    for _ in range(150):
        M = _random_candidate(rng, rng.randint(1, 4), a)
        res = recognize(M, a)
        assert bool(res) == naive_ok(M, a)
        yes += bool(res)
        if res.verdict == YES:
            assert res.decomposition.matrix() == M
    assert yes > 10


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(-1, 1), min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.integers(-1, 1), min_size=n, max_size=n), st.lists(st.integers(-1, 1), min_size=n, max_size=n))))
def test_modular_iff_both_parts_unimodular(data):
    T, u, v = data
    T = IntMatrix(T)
    R = IntMatrix.outer(u, v)
    M = PolyMatrix.affine(T, R)
    both_tu = all(abs(d) <= 1 for _, d in naive_minors(T)) and all(abs(d) <= 1 for _, d in naive_minors(T - R))
    assert both_tu == bool(is_totally_s_modular(M, S5))
    if both_tu:
        assert evaluate(M, 0) == T and evaluate(M, -1) == T - R


def test_allowed_values():
    assert allowed_values(3) == {0, 1, -1, 3, -3, 4, -4, 7, -7}
