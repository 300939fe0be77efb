"""Generic matrices over Q, Laurent polynomials, and rational functions."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wittkit.errors import SingularMatrix
from wittkit.exact.laurent import LaurentPoly
from wittkit.exact.matrix import Matrix, invert_ratfunc_matrix
from wittkit.exact.ratfunc import RatFunc

F = Fraction
z = LaurentPoly.z()


def rand_int_matrix(n):
    entry = st.integers(min_value=-9, max_value=9)
    return st.lists(
        st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n
    ).map(Matrix.from_ints)


def test_basic_algebra():
    a = Matrix.from_ints([[1, 2], [3, 4]])
    b = Matrix.from_ints([[0, 1], [1, 0]])
    assert a * b == Matrix.from_ints([[2, 1], [4, 3]])
    assert a + b - b == a
    assert a.transpose().transpose() == a
    assert (a * b).transpose() == b.transpose() * a.transpose()


def test_det_and_inverse():
    a = Matrix.from_ints([[2, 1], [1, 1]])
    assert a.det() == 1
    assert a * a.inverse() == Matrix.identity(2)
    with pytest.raises(SingularMatrix):
        Matrix.from_ints([[1, 2], [2, 4]]).inverse()


@given(rand_int_matrix(3))
def test_charpoly_constant_term_is_det(a):
    coeffs = a.charpoly()
    assert coeffs[0] == (-1) ** 3 * a.det()
    assert coeffs[3] == 1
    assert coeffs[2] == -a.trace()


def test_charpoly_of_laurent_entries():
    m = Matrix([[z, LaurentPoly.one()], [LaurentPoly.zero(), z**-1]])
    coeffs = m.charpoly()
    # det(tI - m) = t^2 - (z + 1/z) t + 1
    assert coeffs[0] == LaurentPoly.one()
    assert coeffs[1] == -(z + z**-1)
    assert coeffs[2] == LaurentPoly.one()


def test_ratfunc_inverse():
    m = Matrix([[z - 1, LaurentPoly.one()], [LaurentPoly.zero(), z + 1]])
    inv = invert_ratfunc_matrix(m)
    prod = inv * m.map(RatFunc.make)
    assert prod[0, 0] == RatFunc.one()
    assert prod[0, 1].is_zero()
    assert prod[1, 1] == RatFunc.one()


def test_block_diag_and_stack():
    a = Matrix.from_ints([[1]])
    b = Matrix.from_ints([[2, 0], [0, 3]])
    c = Matrix.block_diag([a, b])
    assert c.shape == (3, 3)
    assert c[1, 1] == 2 and c[0, 1] == 0
    assert a.hstack(Matrix.from_ints([[5]])).shape == (1, 2)


def test_rank():
    assert Matrix.from_ints([[1, 2], [2, 4]]).rank() == 1
    assert Matrix.from_ints([[1, 0], [0, 1]]).rank() == 2
    assert Matrix.zeros(2, 3).rank() == 0


def test_bar_is_entrywise():
    m = Matrix([[z, z**2]])
    assert m.bar() == Matrix([[z**-1, z**-2]])
