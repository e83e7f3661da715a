from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from combfloer.errors import DegenerateContact, PointOnLoop
from combfloer.geometry import (CROSSING, DEGENERATE, DISJOINT, SHARED, Polyline, Pt, angle_cmp,
                                build_arrangement, interior_point, loop_multiplicity, rat,
                                seg_intersect, signed_area, winding_by_propagation,
                                winding_by_raycast)


def P(x, y):
    return Pt(Fraction(x), Fraction(y))


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.5)
    assert rat("3/8") == Fraction(3, 8)


@pytest.mark.parametrize("s1,s2,kind", [
    ((P(0, 0), P(2, 2)), (P(0, 2), P(2, 0)), CROSSING),
    ((P(0, 0), P(1, 0)), (P(1, 0), P(1, 1)), SHARED),
    ((P(0, 0), P(2, 0)), (P(1, 0), P(3, 0)), DEGENERATE),
    ((P(0, 0), P(2, 0)), (P(1, 0), P(1, 1)), DEGENERATE),
    ((P(0, 0), P(1, 0)), (P(0, 1), P(1, 1)), DISJOINT),
    ((P(0, 0), P(1, 0)), (P(2, 0), P(3, 0)), DISJOINT),
    ((P(0, 0), P(1, 0)), (P(1, 0), P(2, 0)), SHARED),
])
def test_contact_kinds(s1, s2, kind):
    assert seg_intersect(s1, s2).kind == kind
    assert seg_intersect(s2, s1).kind == kind


def test_crossing_point_is_exact():
    c = seg_intersect((P(0, 0), P(3, 1)), (P(0, 1), P(3, 0)))
    assert c.point == P(Fraction(3, 2), Fraction(1, 2))


def test_angle_order():
    dirs = [P(1, 0), P(1, 1), P(0, 1), P(-1, 1), P(-1, 0), P(-1, -1), P(0, -1), P(1, -1)]
    for a, b in zip(dirs, dirs[1:]):
        assert angle_cmp(a, b) < 0
    assert angle_cmp(P(2, 2), P(1, 1)) == 0


def test_two_crossing_segments():
    arr = build_arrangement([(P(0, 0), P(2, 2)), (P(0, 2), P(2, 0))])
    assert (len(arr.vertices), len(arr.edges), len(arr.faces)) == (5, 4, 1)
    assert arr.euler_ok()


def test_square_winding():
    sq = Polyline([P(0, 0), P(4, 0), P(4, 4), P(0, 4)], closed=True)
    arr = build_arrangement([sq])
    w = winding_by_propagation(arr, loop_multiplicity(arr))
    inner = [f for f in arr.faces if f.bounded]
    assert len(inner) == 1 and w[inner[0].id] == 1
    assert inner[0].area == 16
    assert winding_by_raycast(sq, P(1, 1)) == 1
    assert winding_by_raycast(sq, P(5, 1)) == 0
    with pytest.raises(PointOnLoop):
        winding_by_raycast(sq, P(0, 2))


def test_collinear_overlap_rejected():
    with pytest.raises(DegenerateContact):
        build_arrangement([(P(0, 0), P(2, 0)), (P(1, 0), P(3, 0))])


def test_disjoint_components_and_holes():
    outer = Polyline([P(0, 0), P(9, 0), P(9, 9), P(0, 9)], closed=True)
    hole = Polyline([P(3, 3), P(3, 6), P(6, 6), P(6, 3)], closed=True)
    arr = build_arrangement([outer, hole])
    assert arr.components == 2 and arr.euler_ok()
    w = winding_by_propagation(arr, loop_multiplicity(arr))
    assert w[arr.locate(P(1, 1))[1]] == 1
    assert w[arr.locate(P(4, 4))[1]] == 0
    ring = arr.faces[arr.locate(P(1, 1))[1]]
    assert ring.area == 81 - 9


coord = st.integers(min_value=0, max_value=6).map(Fraction)
loops = st.lists(st.tuples(coord, coord), min_size=3, max_size=7)


@given(loops)
def test_propagation_matches_raycast(raw):
    """Face windings from edge propagation agree with the ray-crossing oracle."""
    pts = [Pt(x, y) for x, y in raw]
    assume(all(a != b for a, b in zip(pts, pts[1:] + pts[:1])))
    loop = Polyline(pts, closed=True)
    try:
        arr = build_arrangement([loop])
    except DegenerateContact:
        assume(False)
    assert arr.euler_ok()
    w = winding_by_propagation(arr, loop_multiplicity(arr))
    total = 0
    for f in arr.faces:
        if not f.bounded:
            continue
        p = interior_point(arr, f)
        assert w[f.id] == winding_by_raycast(loop, p)
        total += w[f.id] * f.area
    assert total == signed_area(loop)
