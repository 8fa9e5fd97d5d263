import itertools
import random
from fractions import Fraction

import pytest

from smodkit.exactlp import INFEASIBLE, OPTIMAL, UNBOUNDED, Box, LpProblem, bounds_2d, solve_lp
from smodkit.polymatrix import bareiss_det


def test_examples():
    r = solve_lp(LpProblem([[1]], [3], [1]))
    assert r.status == OPTIMAL and r.x == [3] and r.objective == 3
    assert solve_lp(LpProblem([[1], [-1]], [3, -5], [1])).status == INFEASIBLE
    r = solve_lp(LpProblem([[-1]], [0], [1]))
    assert r.status == UNBOUNDED and r.ray[0] > 0


def test_bounds_2d_examples():
    square = LpProblem([[1, 0], [-1, 0], [0, 1], [0, -1]], [2, 0, 2, 0], [0, 0])
    assert bounds_2d(square, 0, 1) == Box(0, 2, 0, 2)
    empty = LpProblem([[1, 0], [-1, 0]], [1, -2], [0, 0])
    assert bounds_2d(empty, 0, 1) == INFEASIBLE
    half = bounds_2d(LpProblem([[-1, 0]], [0], [0, 0]), 0, 1)
    assert half.lo_i == 0 and half.hi_i is None and not half.bounded()


def test_equality_rows_and_shape_errors():
    p = LpProblem([[-1, 0], [0, -1]], [0, 0], [1, 2], A_eq=[[1, 1]], b_eq=[Fraction(7, 2)])
    r = solve_lp(p)
    assert r.x == [0, Fraction(7, 2)] and r.objective == 7
    with pytest.raises(ValueError):
        LpProblem([[1, 2]], [1], [1])


def test_vertex_when_face_is_optimal():
    # the whole edge x + y = 4 is optimal; a vertex must be returned
    p = LpProblem([[1, 1], [-1, 0], [0, -1]], [4, 0, 0], [1, 1])
    r = solve_lp(p)
    assert r.objective == 4 and r.x in ([4, 0], [0, 4])
    # no vertex exists without full column rank; any optimal point will do
    r = solve_lp(LpProblem([[1, 1]], [4], [1, 1]))
    assert r.status == OPTIMAL and r.objective == 4


def _random_lp(rng, n, m, box=None):
    A = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)]
    b = [rng.randint(-5, 10) for _ in range(m)]
    if box:
        for j in range(n):
            for s in (1, -1):
                A.append([s * int(k == j) for k in range(n)])
                b.append(box)
    return LpProblem(A, b, [rng.randint(-3, 3) for _ in range(n)])


def _vertices(p):
    n = p.n
    for rows in itertools.combinations(range(len(p.A)), n):
        B = [p.A[i] for i in rows]
        d = bareiss_det(B)
        if d == 0:
            continue
        x = []
        for j in range(n):
            Bj = [r[:j] + [p.b[i]] + r[j + 1:] for r, i in zip(B, rows)]
            x.append(Fraction(bareiss_det(Bj)) / bareiss_det(B))
        if p.is_feasible_point(x):
            yield x


def test_agrees_with_vertex_enumeration():
    rng = random.Random(1)
    for _ in range(300):
        p = _random_lp(rng, rng.randint(2, 3), rng.randint(0, 4), box=6)
        verts = list(_vertices(p))
        r = solve_lp(p)
        if not verts:
            assert r.status == INFEASIBLE
            continue
        best = max(sum(c * t for c, t in zip(p.c, x)) for x in verts)
        assert r.status == OPTIMAL and r.objective == best
        assert r.x in verts


def test_strong_duality():
    rng = random.Random(2)
    checked = 0
    for _ in range(300):
        p = _random_lp(rng, rng.randint(1, 4), rng.randint(1, 6))
        r = solve_lp(p)
        if r.status == UNBOUNDED:
            ray = r.ray
            assert all(sum(a * t for a, t in zip(row, ray)) <= 0 for row in p.A)
            assert sum(c * t for c, t in zip(p.c, ray)) > 0
            continue
        if r.status != OPTIMAL:
            continue
        assert p.is_feasible_point(r.x)
        m = len(p.A)
        # min b.y  s.t.  A^T y = c, y >= 0
        dual = LpProblem([[-int(i == k) for k in range(m)] for i in range(m)], [0] * m, [-v for v in p.b],
                         A_eq=[[p.A[i][j] for i in range(m)] for j in range(p.n)], b_eq=p.c)
        d = solve_lp(dual)
        assert d.status == OPTIMAL and -d.objective == r.objective
        checked += 1
    assert checked > 50


def test_tu_vertices_are_integral():
    A = [[1, 1, 0], [0, 1, 1], [1, 0, 0], [-1, 0, 0], [0, -1, 0], [0, 0, -1], [0, 0, 1]]
    rng = random.Random(3)
    for _ in range(50):
        b = [rng.randint(0, 9) for _ in A]
        r = solve_lp(LpProblem(A, b, [rng.randint(-3, 3) for _ in range(3)]))
        if r.status == OPTIMAL:
            assert all(t.denominator == 1 for t in r.x)
