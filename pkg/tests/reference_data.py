"""Reference matrices, sets and candidate lists shared by the tests."""

from smodkit.polymatrix import PolyMatrix
from smodkit.polyring import Poly, X
from smodkit.smodular import SSet

EQ1 = PolyMatrix([["x+1", "x"], ["x", "x+1"]])
EXAMPLE_4X4 = PolyMatrix([
    ["x", "x+1", "x", "x"],
    ["x+1", "x+1", "x+1", "x"],
    ["x", "x+1", "x+1", "x+1"],
    ["x", "x", "x+1", "x"],
])


def pm(*items):
    out = set()
    for p in items:
        p = Poly.coerce(p) if not isinstance(p, str) else Poly.parse(p)
        out |= {p, -p}
    return out


S5 = SSet.pm(0, 1, X, X + 1, 2 * X + 1)
S4 = SSet.pm(0, X, X + 1, 2 * X + 1)
S_CONFLICT = SSet.pm(0, X, X + 1)

S5_PREFILTER = pm(*[2 * s for s in (1, X, X + 1, 2 * X + 1)],
                  "x-1", "x+2", "2x-1", "2x+3", "3x+1", "3x+2", "4x", "4x+1", "4x+3", "4x+4")
S5_FILTERED = pm("2", "x-1", "x+2", "2x", "2x+2", "3x+1", "3x+2", "4x+2")
S4_FILTERED = pm("1", "2x", "2x+2", "3x+1", "3x+2", "4x+2")
S4_INTERSECTIONS = {-2, -1, 0, 1}
S5_INTERSECTION_HULL = set(range(-3, 3))
