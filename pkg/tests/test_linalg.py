import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy import GF
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.matrices import DomainMatrix

from combfloer import linalg

small = st.integers(min_value=-4, max_value=4)


def matrices(max_dim=5):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def sympy_invariants(a):
    snf = smith_normal_form(sympy.Matrix(a), domain=sympy.ZZ)
    return sorted(abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0)


@given(matrices())
def test_smith_matches_sympy(a):
    mine = linalg.smith_invariants(a)
    assert sorted(mine) == sympy_invariants(a)
    assert all(b % a == 0 for a, b in zip(mine, mine[1:]))


@given(matrices())
def test_rank_mod2_matches_sympy(a):
    dm = DomainMatrix.from_Matrix(sympy.Matrix(a)).convert_to(GF(2))
    assert linalg.rank_mod2(a) == dm.rank()


@given(matrices(4))
def test_rank_z_is_rational_rank(a):
    assert linalg.rank_z(a) == sympy.Matrix(a).rank()


def test_matmul_shapes():
    assert linalg.matmul([], [[1, 2]], 0, 2) == []
    assert linalg.matmul([[1], [2]], [[3, 4]]) == [[3, 4], [6, 8]]
    assert linalg.matmul([[1, 2]], [[0], [1]]) == [[2]]
