"""Dense univariate polynomials over Q.

Polynomials are lists of Fractions, low degree first, with no trailing zeros;
the empty list is zero.  This is the workhorse representation for division,
gcds, Sturm chains and factorization support, while `LaurentPoly` remains the
user-facing type (conversion via `LaurentPoly.ordinary`/`from_dense`).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Sequence

Poly = list  # list[Fraction]


def trim(p: Sequence) -> Poly:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def from_ints(cs) -> Poly:
    return trim([Fraction(c) for c in cs])


def deg(p: Sequence) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(p) - 1


def is_zero(p: Sequence) -> bool:
    return not p


def add(p: Sequence, q: Sequence) -> Poly:
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def neg(p: Sequence) -> Poly:
    return [-c for c in p]


def sub(p: Sequence, q: Sequence) -> Poly:
    return add(p, neg(q))


def scal(c, p: Sequence) -> Poly:
    c = Fraction(c)
    if not c:
        return []
    return [c * x for x in p]


def mul(p: Sequence, q: Sequence) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def divmod_poly(p: Sequence, q: Sequence) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in p]
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    dq = len(q) - 1
    lc = q[-1]
    while len(trim(r)) - 1 >= dq:
        r = trim(r)
        k = len(r) - 1 - dq
        c = r[-1] / lc
        quot[k] = c
        for i, b in enumerate(q):
            r[k + i] -= c * b
        r[-1] = Fraction(0)
    return trim(quot), trim(r)


def mod(p: Sequence, q: Sequence) -> Poly:
    return divmod_poly(p, q)[1]


def monic(p: Sequence) -> Poly:
    p = trim(p)
    if not p:
        return []
    lc = p[-1]
    return [c / lc for c in p]


def gcd(p: Sequence, q: Sequence) -> Poly:
    """Monic gcd."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, mod(a, b)
        b = monic(b)  # keeps coefficients small
    return monic(a)


def ext_gcd(p: Sequence, q: Sequence) -> tuple[Poly, Poly, Poly]:
    """Monic g with g = s*p + t*q; returns (g, s, t)."""
    a, b = trim(p), trim(q)
    sa, sb = [Fraction(1)], []
    ta, tb = [], [Fraction(1)]
    while b:
        quot, rem = divmod_poly(a, b)
        a, b = b, rem
        sa, sb = sb, sub(sa, mul(quot, sb))
        ta, tb = tb, sub(ta, mul(quot, tb))
    if not a:
        return [], [], []
    lc = a[-1]
    inv = Fraction(1) / lc
    return scal(inv, a), scal(inv, sa), scal(inv, ta)


def derivative(p: Sequence) -> Poly:
    return trim([c * i for i, c in enumerate(p)][1:])


def eval_at(p: Sequence, x) -> Fraction:
    x = Fraction(x)
    total = Fraction(0)
    for c in reversed(list(p)):
        total = total * x + c
    return total


def content_primitive(p: Sequence) -> tuple[Fraction, list[int]]:
    """Write p = content * primitive with primitive an integer polynomial of
    content 1 and positive leading coefficient."""
    p = trim(p)
    if not p:
        return Fraction(0), []
    den = 1
    for c in p:
        den = den * c.denominator // int_gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = int_gcd(g, abs(c))
    ints = [c // g for c in ints]
    sign = 1
    if ints[-1] < 0:
        ints = [-c for c in ints]
        sign = -1
    return Fraction(sign * g, den), ints


def squarefree_decomposition(p: Sequence) -> list[tuple[Poly, int]]:
    """Yun's algorithm over Q.  Returns monic squarefree factors with
    multiplicities; the product with multiplicities equals monic(p)."""
    p = monic(p)
    if deg(p) <= 0:
        return []
    out = []
    g = gcd(p, derivative(p))
    w = divmod_poly(p, g)[0]
    y = divmod_poly(derivative(p), g)[0]
    z = sub(y, derivative(w))
    i = 1
    while deg(w) > 0:
        gi = gcd(w, z)
        if deg(gi) > 0:
            out.append((monic(gi), i))
        w = divmod_poly(w, gi)[0]
        y = divmod_poly(z, gi)[0]
        z = sub(y, derivative(w))
        i += 1
    return out


# ---- real root machinery (Sturm) ----

def sturm_chain(p: Sequence) -> list[Poly]:
    chain = [trim(p), derivative(p)]
    while chain[-1]:
        r = mod(chain[-2], chain[-1])
        chain.append(neg(r))
    chain.pop()
    return chain


def _sign_changes(values) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(chain: list[Poly], a, b) -> int:
    """Number of distinct real roots in (a, b] for a squarefree chain."""
    va = _sign_changes([eval_at(q, a) for q in chain])
    vb = _sign_changes([eval_at(q, b) for q in chain])
    return va - vb


def isolate_real_roots(p: Sequence, lo, hi) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open-ended rational intervals (a, b], one distinct real root
    of p in each, all roots of p inside (lo, hi].  p need not be squarefree;
    roots are isolated for the squarefree part."""
    sf = monic(divmod_poly(p, gcd(p, derivative(p)))[0]) if deg(p) > 0 else trim(p)
    if deg(sf) <= 0:
        return []
    chain = sturm_chain(sf)
    lo, hi = Fraction(lo), Fraction(hi)
    out: list[tuple[Fraction, Fraction]] = []

    def split(a: Fraction, b: Fraction, count: int) -> None:
        if count == 0:
            return
        if count == 1:
            out.append((a, b))
            return
        m = (a + b) / 2
        # nudge off a root so interval endpoints stay root-free
        while eval_at(sf, m) == 0:
            m = (a + m) / 2
        cl = sturm_count(chain, a, m)
        split(a, m, cl)
        split(m, b, count - cl)

    split(lo, hi, sturm_count(chain, lo, hi))
    out.sort()
    return out


def descartes_positive_roots(coeffs: Sequence) -> int:
    """Sign variation count of the coefficient list.  For a polynomial with
    all real roots this equals the number of positive roots (with
    multiplicity), which is the only case we use it in."""
    return _sign_changes(list(coeffs))


# ---- Chebyshev-style bases for the substitution y = z + 1/z ----

def chebyshev_q(j: int) -> Poly:
    """Q_j with z^j + z^-j = Q_j(z + 1/z):  Q_0 = 2, Q_1 = y,
    Q_{j+1} = y*Q_j - Q_{j-1}."""
    a, b = [Fraction(2)], [Fraction(0), Fraction(1)]
    if j == 0:
        return a
    for _ in range(j - 1):
        a, b = b, sub(mul([Fraction(0), Fraction(1)], b), a)
    return b


def chebyshev_s(j: int) -> Poly:
    """S_j with (z^j - z^-j)/(z - 1/z) = S_j(z + 1/z) for j >= 1, extended to
    all integers by S_0 = 0 and S_{-j} = -S_j:  S_1 = 1, S_2 = y,
    S_{j+1} = y*S_j - S_{j-1}."""
    if j == 0:
        return []
    if j < 0:
        return neg(chebyshev_s(-j))
    a, b = [Fraction(1)], [Fraction(0), Fraction(1)]
    if j == 1:
        return a
    for _ in range(j - 2):
        a, b = b, sub(mul([Fraction(0), Fraction(1)], b), a)
    return b


def palindromic_to_y(p: Sequence) -> Poly:
    """For palindromic p of even degree 2m (coefficients c_i = c_{2m-i})
    return Y of degree m with p(z) = z^m * Y(z + 1/z)."""
    p = trim(p)
    n = deg(p)
    if n % 2 != 0:
        raise ValueError("degree must be even")
    m = n // 2
    if any(p[i] != p[n - i] for i in range(m)):
        raise ValueError("polynomial is not palindromic")
    out = [p[m]]
    for j in range(1, m + 1):
        out = add(out, scal(p[m + j], chebyshev_q(j)))
    return trim(out)
