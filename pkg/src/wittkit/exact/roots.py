"""Certified unit-circle roots and exact signatures.

A unit-circle root pair e^{+-i*theta} of a self-conjugate irreducible factor
is pinned down by a rational interval around y0 = 2*cos(theta) together with
the minimal polynomial of y0 over Q.  All sign decisions route through that
data: a rational polynomial g has g(y0) = 0 exactly when the minimal
polynomial divides g, and otherwise interval arithmetic on a shrinking
bracket eventually certifies the sign.  Floating point appears only in the
reported theta endpoints, never in a decision.

Signatures of hermitian matrices over a residue field are computed from the
characteristic polynomial: its coefficients are fixed by the involution, so
they rewrite as rational polynomials in y, and Descartes' rule (exact for
real-rooted polynomials) counts eigenvalues of each sign at y0.
"""

from __future__ import annotations

import math
from fractions import Fraction

from wittkit.errors import SingularForm
from wittkit.exact import polys
from wittkit.exact.laurent import LaurentPoly
from wittkit.exact.matrix import Matrix
from wittkit.exact.residue import ResidueField

DEFAULT_PRECISION = Fraction(1, 2**64)


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _interval_horner(g, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Bounds for {g(y) : lo <= y <= hi}."""
    a = b = Fraction(0)
    for c in reversed(g):
        cands = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(cands) + c, max(cands) + c
    return a, b


class CertifiedRoot:
    """One root pair of `factor` on the unit circle, certified by a rational
    bracket [lo, hi] around y0 = 2*cos(theta) and the minimal polynomial
    y_poly of y0.  A point bracket (lo == hi) means y0 is rational."""

    def __init__(self, y_poly, lo, hi, factor: LaurentPoly | None = None):
        self.y_poly = polys.monic(y_poly)
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        self.factor = factor
        if self.lo > self.hi:
            raise ValueError("empty interval")
        if self.lo == self.hi:
            if polys.eval_at(self.y_poly, self.lo) != 0:
                raise ValueError("point interval must sit on a root")
        else:
            slo = _sign(polys.eval_at(self.y_poly, self.lo))
            shi = _sign(polys.eval_at(self.y_poly, self.hi))
            if slo == 0 or shi == 0 or slo == shi:
                raise ValueError("interval endpoints must bracket one root")

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    def refine(self, width: Fraction) -> None:
        """Shrink the bracket below `width` by bisection."""
        while self.hi - self.lo > width:
            self._bisect()

    def _bisect(self) -> None:
        mid = (self.lo + self.hi) / 2
        v = polys.eval_at(self.y_poly, mid)
        if v == 0:
            # minimal polynomials of irrational y0 have no rational roots
            self.lo = self.hi = mid
            return
        if _sign(v) == _sign(polys.eval_at(self.y_poly, self.lo)):
            self.lo = mid
        else:
            self.hi = mid

    def sign_of(self, g) -> int:
        """Certified sign of g(y0) for a dense rational polynomial g."""
        rem = polys.mod(polys.trim([Fraction(c) for c in g]), self.y_poly)
        if not rem:
            return 0
        if self.is_rational:
            return _sign(polys.eval_at(rem, self.lo))
        while True:
            a, b = _interval_horner(rem, self.lo, self.hi)
            if a > 0:
                return 1
            if b < 0:
                return -1
            self._bisect()

    def theta_interval(self) -> tuple[float, float]:
        """Float bracket for theta = arccos(y0/2); reporting only, padded so
        rounding cannot put the true value outside."""
        pad = 1e-12
        t_lo = math.acos(min(1.0, max(-1.0, float(self.hi) / 2)))
        t_hi = math.acos(min(1.0, max(-1.0, float(self.lo) / 2)))
        return max(0.0, t_lo - pad), min(math.pi, t_hi + pad)

    def __repr__(self):
        a, b = self.theta_interval()
        return f"CertifiedRoot(theta in [{a:.6f}, {b:.6f}])"


def unit_circle_roots(
    factor: LaurentPoly, precision: Fraction = DEFAULT_PRECISION
) -> list[CertifiedRoot]:
    """Certified roots of a monic irreducible self-conjugate factor on the
    upper unit circle (theta in [0, pi]), ordered by increasing theta."""
    dense, k = factor.ordinary()
    if k != 0:
        raise ValueError("factor must be an ordinary polynomial")
    n = polys.deg(dense)
    if n == 1:
        a = -dense[0]
        if a == 1:  # z - 1, theta = 0
            return [CertifiedRoot([Fraction(-2), Fraction(1)], 2, 2, factor)]
        if a == -1:  # z + 1, theta = pi
            return [CertifiedRoot([Fraction(2), Fraction(1)], -2, -2, factor)]
        return []
    y_poly = polys.monic(polys.palindromic_to_y(dense))
    if polys.deg(y_poly) == 1:
        y0 = -y_poly[0]
        if -2 < y0 < 2:
            return [CertifiedRoot(y_poly, y0, y0, factor)]
        return []
    out = []
    for lo, hi in polys.isolate_real_roots(y_poly, Fraction(-2), Fraction(2)):
        root = CertifiedRoot(y_poly, lo, hi, factor)
        root.refine(precision)
        out.append(root)
    # theta increases as y decreases
    out.sort(key=lambda r: (-r.hi, -r.lo))
    return out


def _descartes_signature(coeff_signs: list[int]) -> int:
    """Signature from the signs of the characteristic polynomial
    coefficients (constant term first), valid for real-rooted polynomials
    with nonzero constant term."""
    n_pos = polys.descartes_positive_roots(coeff_signs)
    flipped = [s if i % 2 == 0 else -s for i, s in enumerate(coeff_signs)]
    n_neg = polys.descartes_positive_roots(flipped)
    return n_pos - n_neg


def hermitian_signature_at_root(h: Matrix, root: CertifiedRoot) -> int:
    """Signature of a hermitian matrix over Q[z]/(factor) at the embedding
    z -> e^{i*theta}.  Entries must be ResidueElem over a self-conjugate
    field; the matrix must satisfy bar(h)^T == h."""
    if h.nrows == 0:
        return 0
    field: ResidueField = h[0, 0].field
    coeffs = h.charpoly()
    in_y = [field.express_in_y(c) for c in coeffs]
    if root.sign_of(in_y[0]) == 0:
        raise SingularForm("hermitian form is singular at this root")
    signs = [root.sign_of(g) for g in in_y]
    return _descartes_signature(signs)


def signature_of_symmetric(m: Matrix) -> int:
    """Signature of a nonsingular symmetric rational matrix."""
    if m.nrows == 0:
        return 0
    coeffs = m.charpoly()
    if coeffs[0] == 0:
        raise SingularForm("symmetric form is singular")
    return _descartes_signature([_sign(Fraction(c)) for c in coeffs])


def minimal_poly_of_2cos(numer: int, denom: int) -> tuple[list[Fraction], Fraction, Fraction]:
    """Minimal polynomial of y0 = 2*cos(2*pi*numer/denom) together with an
    isolating rational bracket.  Used for signatures at algebraic points of
    the unit circle given by a rational turn."""
    from wittkit.exact.factor import cyclotomic_polynomial

    if denom <= 0:
        raise ValueError("denominator must be positive")
    numer %= denom
    g = math.gcd(numer, denom)
    numer, denom = numer // g, denom // g
    if denom == 1:  # theta = 0
        return [Fraction(-2), Fraction(1)], Fraction(2), Fraction(2)
    if denom == 2:  # theta = pi
        return [Fraction(2), Fraction(1)], Fraction(-2), Fraction(-2)
    phi = cyclotomic_polynomial(denom)
    y_poly = polys.monic(polys.palindromic_to_y(phi))
    if polys.deg(y_poly) == 1:
        y0 = -y_poly[0]
        return y_poly, y0, y0
    # bracket 2*cos(2*pi*numer/denom): the float center is accurate to a few
    # ulps, so once the window around it holds a single root it is the right
    # one; the window never shrinks to the float-error scale for the moduli
    # this can see in practice
    center = Fraction(2 * math.cos(2 * math.pi * numer / denom))
    width = Fraction(1, 2**20)
    while width >= Fraction(1, 2**48):
        roots = polys.isolate_real_roots(y_poly, center - width, center + width)
        if len(roots) == 1:
            a, b = roots[0]
            return y_poly, a, b
        width /= 2
    raise ValueError("failed to isolate the requested root")
