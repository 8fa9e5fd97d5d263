import itertools
import random

from reference_data import EQ1, EXAMPLE_4X4, S4, S5, S_CONFLICT
from smodkit.polymatrix import PolyMatrix, det
from smodkit.polyring import X, Poly
from smodkit.search import canonical_form, search_forbidden_minors
from smodkit.smodular import enumerate_fs_candidates, is_forbidden_minor


def _shuffle(M, rng):
    rows = list(range(M.rows))
    cols = list(range(M.cols))
    rng.shuffle(rows)
    rng.shuffle(cols)
    s = rng.choice((1, -1))
    return PolyMatrix([[M.entries[i][j] * s for j in cols] for i in rows])


def _brute(S, pool, n):
    found = set()
    for flat in itertools.product(pool, repeat=n * n):
        M = PolyMatrix([flat[i * n:(i + 1) * n] for i in range(n)])
        if is_forbidden_minor(M, S):
            found.add(canonical_form(M, pool))
    return found


def test_canonical_form_is_a_class_invariant():
    rng = random.Random(3)
    for M in (EQ1, EXAMPLE_4X4, PolyMatrix([["1", "x", "0"], ["-x", "2", "x+1"], ["0", "1", "-1"]])):
        C = canonical_form(M)
        assert canonical_form(C) == C
        for _ in range(20):
            assert canonical_form(_shuffle(M, rng)) == C


def test_eq1_class_is_the_only_2x2_minor():
    found = search_forbidden_minors(S_CONFLICT, [X, X + 1], 2)
    assert found == [(canonical_form(EQ1, [X, X + 1]), 2 * X + 1)] or \
        [M for M, _ in found] == [canonical_form(EQ1, [X, X + 1])]


def test_no_2x2_minor_for_four_set():
    assert search_forbidden_minors(S4, [X, X + 1], 2) == []


def test_known_4x4_class_is_found():
    found = search_forbidden_minors(S4, [X, X + 1], 4)
    pool = [X, X + 1]
    assert canonical_form(EXAMPLE_4X4, pool) in [M for M, _ in found]
    for M, d in found:
        assert is_forbidden_minor(M, S4) and det(M) == d


def test_search_matches_brute_force_3x3():
    pool = [X, X + 1]
    got = {M for M, _ in search_forbidden_minors(S4, pool, 3, n_min=3)}
    assert got == _brute(S4, pool, 3)
    pool = [Poly((-1,)), X, X + 1]
    got = {M for M, _ in search_forbidden_minors(S5, pool, 3, n_min=3)}
    assert got == _brute(S5, pool, 3)


def test_search_matches_brute_force_sign_closed_pool():
    pool = [Poly((1,)), Poly((-1,)), X, -X]
    got = {M for M, _ in search_forbidden_minors(S5, pool, 2)}
    assert got == _brute(S5, pool, 2)


def test_workers_agree():
    pool = [Poly((0,)), Poly((1,)), Poly((-1,)), X, -X, X + 1, -X - 1]
    assert search_forbidden_minors(S5, pool, 3, workers=2) == search_forbidden_minors(S5, pool, 3)


def test_determinants_lie_in_candidates():
    rep = enumerate_fs_candidates(S5)
    allowed = rep.candidates()
    pool = [Poly((0,)), Poly((1,)), Poly((-1,)), X, -X, X + 1, -X - 1]
    for M, d in search_forbidden_minors(S5, pool, 3, n_min=3):
        assert d in allowed


from hypothesis import given, strategies as st

entries = st.sampled_from([Poly(()), Poly((1,)), Poly((-1,)), X, -X, X + 1])


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(entries, min_size=n, max_size=n), min_size=1, max_size=4),
    st.randoms(use_true_random=False))))
def test_canonical_form_invariance_property(data):
    rows, rnd = data
    M = PolyMatrix(rows)
    assert canonical_form(_shuffle(M, rnd)) == canonical_form(M)
