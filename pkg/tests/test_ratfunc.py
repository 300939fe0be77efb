"""Rational functions: canonical form, class representatives, series tails."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wittkit.errors import NotInvertibleInNovikov
from wittkit.exact.laurent import LaurentPoly
from wittkit.exact.ratfunc import RatFunc, series_expand

F = Fraction
z = LaurentPoly.z()


def rand_ratfunc():
    coeff = st.integers(min_value=-5, max_value=5)
    num = st.lists(coeff, min_size=0, max_size=4).map(
        lambda cs: LaurentPoly.from_dense([F(c) for c in cs])
    )
    den = st.lists(coeff, min_size=1, max_size=4).map(
        lambda cs: LaurentPoly.from_dense([F(c) for c in cs]) + z**4
    )
    return st.builds(RatFunc.make, num, den)


def test_canonical_form_reduces():
    f = RatFunc.make((z - 1) * (z - 2), (z - 2) * (z - 3))
    assert f == RatFunc.make(z - 1, z - 3)
    # denominator is monic with nonzero constant term
    assert f.den[-1] == 1 and f.den[0] != 0


def test_z_powers_move_to_numerator():
    f = RatFunc.make(LaurentPoly.one(), z**3 - z**2)
    assert f == RatFunc.make(z**-2, z - 1)


@given(rand_ratfunc(), rand_ratfunc())
def test_field_laws(f, g):
    assert f + g == g + f
    assert f * g == g * f
    assert f - f == RatFunc.zero()
    if not g.is_zero():
        assert (f / g) * g == f


@given(rand_ratfunc())
def test_bar_involutive(f):
    assert f.bar().bar() == f


def test_inverse_of_zero_raises():
    with pytest.raises(NotInvertibleInNovikov):
        RatFunc.zero().inverse()


# ---- representatives modulo Laurent polynomials ----

def test_frac_class_drops_polynomial_part():
    f = RatFunc.make(z**2 + 1, z - 3)
    g = f + RatFunc.make(z**5 - 7 * z**-2)
    assert f.frac_class() == g.frac_class()
    assert f.class_equals(g)


def test_frac_class_zero_for_laurent():
    assert RatFunc.make(z**3 - z**-1).frac_class() == RatFunc.zero()


def test_frac_class_reduces_degree():
    f = RatFunc.make(z**9, (z - 2) * (z - 5))
    c = f.frac_class()
    assert c.num.min_deg() >= 0
    assert c.num.max_deg() < 2


# ---- series expansions at both completions ----

def test_plus_expansion_of_simple_pole():
    # 1/(a - z) = a^-1 + a^-2 z + a^-3 z^2 + ...
    a = F(5)
    f = RatFunc.make(LaurentPoly.one(), LaurentPoly.const(a) - z)
    got = series_expand(f, "plus", 0, 2)
    assert got == {0: F(1, 5), 1: F(1, 25), 2: F(1, 125)}


def test_minus_expansion_of_simple_pole():
    # 1/(a - z) = -z^-1 - a z^-2 - a^2 z^-3 - ...
    a = F(5)
    f = RatFunc.make(LaurentPoly.one(), LaurentPoly.const(a) - z)
    got = series_expand(f, "minus", -3, -1)
    assert got == {-3: F(-25), -2: F(-5), -1: F(-1)}


def test_two_expansions_differ_for_nonpolynomial():
    # the difference of the two tails detects the class of 1/(1+z)
    f = RatFunc.make(LaurentPoly.one(), 1 + z)
    plus0 = series_expand(f, "plus", 0, 0)[0]
    minus0 = series_expand(f, "minus", 0, 0)[0]
    assert plus0 == 1 and minus0 == 0


@given(rand_ratfunc())
def test_expansions_agree_on_laurent_part(f):
    p = z**2 - 3 + z**-1
    g = f + RatFunc.make(p)
    dplus = series_expand(g, "plus", -2, 3)
    fplus = series_expand(f, "plus", -2, 3)
    for d in range(-2, 4):
        assert dplus[d] - fplus[d] == p.coefficient(d)
