import random
from fractions import Fraction

import pytest

from combfloer.errors import NotAComplex, Unsupported
from combfloer.floer import (action_order_check, build_complex, d_squared, enumerate_hearts,
                             euler_characteristic, geo_oracle, heart_pairing_check, homology)
from combfloer.isotopy import random_wiggle
from combfloer.io import fixture
from combfloer.lunes import all_lunes, find_lunes, lune_count, primitive_existence_check

from conftest import TORUS_FIXTURES


def lune_summary(pair):
    return {k: sorted((lu.sign, lu.primitive) for lu in v) for k, v in all_lunes(pair).items()}


def test_torus3_lunes(fixtures):
    p3 = fixtures["F_TORUS3"]
    assert lune_summary(p3) == {(0, 1): [(1, True)], (2, 1): [(-1, True)]}
    areas = sorted(lu.area for ls in all_lunes(p3).values() for lu in ls)
    assert areas == [Fraction(1, 64), Fraction(1, 32)]
    x1, x2, x3 = p3.points
    for a, b in ((x2, x1), (x2, x3), (x1, x3)):
        assert find_lunes(p3, a, b) == []


def test_lune_lists(fixtures):
    assert all_lunes(fixtures["F_TORUS1"]) == {}
    assert all_lunes(fixtures["F_TORUS2"]) == {}
    assert {k: len(v) for k, v in all_lunes(fixtures["F_TORUS4"]).items()} == {(0, 1): 1, (1, 0): 1}
    plane = all_lunes(fixtures["F_PLANE"])
    # one lens from (4,2) to (2,4); two L-shaped lunes back that cancel
    assert [lu.area for lu in plane[(0, 1)]] == [4]
    assert sorted(lu.sign for lu in plane[(1, 0)]) == [-1, 1]
    assert lune_count(plane, 1, 0, "F2") == 0 and lune_count(plane, 1, 0, "Z") == 0


def test_nested_fixture_primitivity(fixtures):
    lunes = all_lunes(fixtures["F_NEST"])
    prim = {k: [lu.primitive for lu in v] for k, v in lunes.items()}
    assert prim[(1, 2)] == [True] and prim[(3, 2)] == [True]
    assert prim[(0, 1)] == [False]
    assert primitive_existence_check(fixtures["F_NEST"], lunes)["holds"]


def test_differentials(fixtures):
    assert build_complex(fixtures["F_TORUS1"]).matrix == [[0]]
    f2 = build_complex(fixtures["F_TORUS3"], "F2").matrix
    assert f2 == [[0, 1, 0], [0, 0, 0], [0, 1, 0]]
    z = build_complex(fixtures["F_TORUS3"], "Z").matrix
    assert z == [[0, 1, 0], [0, 0, 0], [0, -1, 0]]


def test_d_squared(fixtures):
    for name in ("F_TORUS3", "F_PLANE", "F_NEST", "F_ANN"):
        for coeff in ("F2", "Z"):
            assert d_squared(build_complex(fixtures[name], coeff))[1]
    sq, zero = d_squared(build_complex(fixtures["F_TORUS4"], "F2"))
    assert not zero and sq == [[1, 0], [0, 1]]
    with pytest.raises(NotAComplex):
        homology(build_complex(fixtures["F_TORUS4"]))


@pytest.mark.parametrize("name,dim,euler", [
    ("F_TORUS1", 1, 1), ("F_TORUS2", 2, 2), ("F_TORUS3", 1, 1), ("F_PLANE", 0, 0),
    ("F_ANN", 2, 0), ("F_NEST", 1, 1),
])
def test_homology(fixtures, name, dim, euler):
    cx = build_complex(fixtures[name], "F2")
    assert homology(cx)["dim"] == dim
    assert euler_characteristic(cx) == euler


def test_integer_homology(fixtures):
    h = homology(build_complex(fixtures["F_TORUS3"], "Z"))
    assert h["free_rank"] == 1 and not h["torsion_HF0"] and not h["torsion_HF1"]


def test_geo_oracle(fixtures):
    assert [geo_oracle(fixtures[n]) for n in ("F_TORUS1", "F_TORUS2", "F_TORUS3")] == [1, 2, 1]
    assert geo_oracle(fixtures["F_TORUS4"]) == 0
    with pytest.raises(Unsupported):
        geo_oracle(fixtures["F_ANN"])


def test_relative_grading(fixtures):
    cx = build_complex(fixtures["F_TORUS3"], "Z")
    assert cx.rel_grade == [1, 0, 1] and not cx.grade_warnings
    assert cx.components == [[0, 1, 2]]
    assert len(build_complex(fixtures["F_TORUS2"]).components) == 2


def test_hearts(fixtures):
    p3 = fixtures["F_TORUS3"]
    assert all(enumerate_hearts(p3, x, z) == [] for x in range(3) for z in range(3))
    nest = fixtures["F_NEST"]
    rep = heart_pairing_check(nest)
    assert rep["holds"] and rep["z_cancels"]
    assert rep["counts"] == {"0,2": 2, "4,2": 2}
    assert {p["types"] for p in rep["pairs"]} == {"ac"}
    assert heart_pairing_check(fixtures["F_PLANE"], strict=False)["counts"] == {"0,0": 2, "1,1": 2}


def test_action(fixtures):
    rep = action_order_check(fixtures["F_TORUS3"])
    assert rep["holds"] and rep["areas"] == {"0->1": [Fraction(1, 32)], "2->1": [Fraction(1, 64)]}
    assert not action_order_check(fixtures["F_TORUS4"], strict=True)["holds"]


def test_random_wiggles_pair_their_hearts():
    rng = random.Random(11)
    for i in range(12):
        pair = random_wiggle(fixture(TORUS_FIXTURES[i % 3]), rng, 2)
        lunes = all_lunes(pair)
        rep = heart_pairing_check(pair, lunes)
        zero = d_squared(build_complex(pair, "F2", lunes))[1]
        assert rep["holds"] and zero and rep["z_cancels"]
        assert primitive_existence_check(pair, lunes)["holds"]
        assert action_order_check(pair, lunes)["holds"]
