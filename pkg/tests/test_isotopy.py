import random
from dataclasses import replace
from fractions import Fraction

import pytest

from combfloer.errors import NotPrimitive, PathObstructed
from combfloer.floer import build_complex, homology
from combfloer.io import fixture
from combfloer.isotopy import (cancel_pair, cancellable, create_pair, nolune_check, random_create,
                               verify_move)
from combfloer.lunes import all_lunes
from combfloer.surfaces import num_alg

from conftest import TORUS_FIXTURES


def the_lune(pair, x, y):
    (lu,) = all_lunes(pair)[(x, y)]
    return lu


def test_cancel_torus3(fixtures):
    p3 = fixtures["F_TORUS3"]
    after = cancel_pair(p3, the_lune(p3, 0, 1))
    assert num_alg(after) == (1, 1)
    assert after.points[0].along_alpha == Fraction(7, 8)
    rep = verify_move(p3, after, 0, 1)
    assert rep["holds"] and rep["hf_before"] == rep["hf_after"] == 1
    assert rep["reduction_agrees"]


def test_cancel_plane_lens(fixtures):
    plane = fixtures["F_PLANE"]
    after = cancel_pair(plane, the_lune(plane, 0, 1))
    assert after.points == []
    rep = verify_move(plane, after, 0, 1)
    assert rep["holds"] and rep["survivors"] == 0 and rep["hf_after"] == 0
    # the rerouted corner of beta sits just outside alpha; push it back across
    again = create_pair(after, Fraction(11, 2), Fraction(3, 2))
    assert len(again.points) == 2


def test_non_primitive_lune(fixtures):
    p3 = fixtures["F_TORUS3"]
    fake = replace(the_lune(p3, 0, 1), primitive=False)
    with pytest.raises(NotPrimitive):
        cancel_pair(p3, fake)
    nest = fixtures["F_NEST"]
    with pytest.raises(NotPrimitive):
        cancel_pair(nest, the_lune(nest, 0, 1))


def test_finger_on_torus1(fixtures):
    p1 = fixtures["F_TORUS1"]
    new = create_pair(p1, Fraction(1, 4), Fraction(1, 4))
    assert [p.eps for p in new.points] == [1, -1, 1]
    assert homology(build_complex(new))["dim"] == 1
    assert sorted(len(v) for v in all_lunes(new).values()) == [1, 1]


def test_obstructed_finger(fixtures):
    p3 = fixtures["F_TORUS3"]
    # from the top of beta towards alpha at 5/8: the ray passes beta's own detour
    with pytest.raises(PathObstructed):
        create_pair(p3, Fraction(1, 2), Fraction(5, 8))


def test_nolune(fixtures):
    for name in ("F_TORUS1", "F_TORUS2", "F_TORUS3", "F_NEST"):
        assert nolune_check(fixtures[name])["holds"]
    assert nolune_check(fixtures["F_TORUS1"])["instances"] == 0


def _matrix_by_alpha(pair):
    n = build_complex(pair, "F2").matrix
    ids = {p.id: p.along_alpha for p in pair.points}
    return {(ids[x], ids[y]): n[x][y] for x in ids for y in ids}


def test_create_then_cancel_round_trips():
    rng = random.Random(3)
    done = 0
    for i in range(15):
        base = fixture(TORUS_FIXTURES[i % 3])
        made = random_create(base, rng)
        assert made is not None
        mid, fresh = made
        ids = {p.along_alpha: p.id for p in mid.points}
        a, b = ids[fresh[0]], ids[fresh[1]]
        lune = next(lu for lu in cancellable(mid) if {lu.x.id, lu.y.id} == {a, b})
        back = cancel_pair(mid, lune)
        assert verify_move(mid, back, lune.x.id, lune.y.id)["holds"]
        assert _matrix_by_alpha(back) == _matrix_by_alpha(base)
        assert num_alg(back) == num_alg(base)
        done += 1
    assert done == 15
