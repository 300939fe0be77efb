"""Dense rational polynomial helpers: division, gcd, Yun, Sturm, Chebyshev."""

from fractions import Fraction

from hypothesis import given, strategies as st

from wittkit.exact import polys

F = Fraction


def rand_poly(max_deg=5):
    return st.lists(
        st.integers(min_value=-9, max_value=9), min_size=0, max_size=max_deg + 1
    ).map(polys.from_ints)


@given(rand_poly(), rand_poly())
def test_divmod_reconstructs(a, b):
    if polys.is_zero(b):
        return
    q, r = polys.divmod_poly(a, b)
    assert polys.add(polys.mul(q, b), r) == polys.trim(a)
    assert polys.deg(r) < polys.deg(b)


@given(rand_poly(), rand_poly())
def test_ext_gcd_bezout(a, b):
    if polys.is_zero(a) and polys.is_zero(b):
        return
    g, s, t = polys.ext_gcd(a, b)
    assert polys.add(polys.mul(s, a), polys.mul(t, b)) == g
    assert polys.mod(a, g) == [] and polys.mod(b, g) == []


def test_yun_squarefree():
    # (x-1)^2 (x+2)^3 x
    p = polys.mul(
        polys.mul([F(1), F(-2), F(1)], polys.from_ints([8, 12, 6, 1])),
        [F(0), F(1)],
    )
    parts = polys.squarefree_decomposition(p)
    by_mult = {m: f for f, m in parts}
    assert by_mult[1] == [F(0), F(1)]
    assert by_mult[2] == [F(-1), F(1)]
    assert by_mult[3] == [F(2), F(1)]


def test_content_primitive():
    c, prim = polys.content_primitive([F(4, 3), F(-2, 3)])
    assert c == F(-2, 3)
    assert prim == [-2, 1]
    assert polys.scal(c, [F(p) for p in prim]) == [F(4, 3), F(-2, 3)]


def test_sturm_isolation():
    # roots at 1, 2, 3
    p = polys.from_ints([-6, 11, -6, 1])
    ivs = polys.isolate_real_roots(p, F(0), F(10))
    assert len(ivs) == 3
    for (a, b), root in zip(ivs, [1, 2, 3]):
        assert a < root <= b


def test_sturm_handles_multiple_roots():
    p = polys.mul([F(-1), F(1)], [F(-1), F(1)])  # (x-1)^2
    ivs = polys.isolate_real_roots(p, F(0), F(2))
    assert len(ivs) == 1


def test_descartes_on_real_rooted():
    # (x-1)(x-2)(x+3) = x^3 - 7x + 6  ->  two positive roots
    p = polys.from_ints([6, -7, 0, 1])
    assert polys.descartes_positive_roots(p) == 2


# ---- y = z + 1/z substitution ----

def test_chebyshev_q_identity():
    # z^j + z^-j evaluated at z = 3 must equal Q_j(3 + 1/3)
    zval = F(3)
    y = zval + 1 / zval
    for j in range(6):
        assert polys.eval_at(polys.chebyshev_q(j), y) == zval**j + zval**-j


def test_chebyshev_s_identity():
    zval = F(2)
    y = zval + 1 / zval
    denom = zval - 1 / zval
    for j in range(1, 6):
        expect = (zval**j - zval**-j) / denom
        assert polys.eval_at(polys.chebyshev_s(j), y) == expect
    assert polys.chebyshev_s(0) == []
    assert polys.chebyshev_s(-2) == polys.neg(polys.chebyshev_s(2))


def test_palindromic_to_y():
    # z^2 - z + 1 = z * (y - 1)
    assert polys.palindromic_to_y([F(1), F(-1), F(1)]) == [F(-1), F(1)]
    # z^4 + 1 = z^2 * (y^2 - 2)
    got = polys.palindromic_to_y([F(1), F(0), F(0), F(0), F(1)])
    assert got == [F(-2), F(0), F(1)]
