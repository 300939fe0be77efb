"""Residue fields Q[z]/(d) for monic irreducible d with d(0) != 0.

When d is self-conjugate (equal to its own reversal up to the forced scalar)
the field carries the involution z -> 1/z, and the involution-fixed elements
form a subfield generated by y = z + 1/z.  Signature computations need those
fixed elements rewritten as rational polynomials in y, because y is the
quantity that takes real values at unit-circle roots of d; the linear algebra
for that rewrite is cached per field.

Elements are immutable dense coefficient tuples of length < deg(d).
"""

from __future__ import annotations

from fractions import Fraction

from wittkit.exact import polys


class ResidueField:
    def __init__(self, modulus):
        mod = polys.trim([Fraction(c) for c in modulus])
        if polys.deg(mod) < 1:
            raise ValueError("modulus must have positive degree")
        if mod[-1] != 1:
            raise ValueError("modulus must be monic")
        if mod[0] == 0:
            raise ValueError("modulus must not vanish at 0")
        self.modulus = mod
        self.degree = polys.deg(mod)
        # z * (d_n z^{n-1} + ... + d_1) = -d_0, so 1/z is a polynomial in z
        self._z_inv = polys.trim([-c / mod[0] for c in mod[1:]])
        rev = polys.monic(list(reversed(mod)))
        self.self_conjugate = rev == mod
        self._y_columns = None
        self._y_min_poly = None

    # -- element constructors --

    def elem(self, coeffs) -> "ResidueElem":
        dense = polys.mod([Fraction(c) for c in coeffs], self.modulus)
        return ResidueElem(self, tuple(dense))

    def zero(self) -> "ResidueElem":
        return ResidueElem(self, ())

    def one(self) -> "ResidueElem":
        return self.elem([1])

    def gen(self) -> "ResidueElem":
        return self.elem([0, 1])

    def from_laurent(self, p) -> "ResidueElem":
        """Image of a Laurent polynomial under z -> generator."""
        out = self.zero()
        zinv = ResidueElem(self, tuple(self._z_inv))
        for d, c in p.coeffs.items():
            power = self.gen() ** d if d >= 0 else zinv ** (-d)
            out = out + power * c
        return out

    # -- involution --

    def bar_elem(self, e: "ResidueElem") -> "ResidueElem":
        if not self.self_conjugate:
            raise ValueError("involution requires a self-conjugate modulus")
        zinv = ResidueElem(self, tuple(self._z_inv))
        out = self.zero()
        for c in reversed(e.coeffs):
            out = out * zinv + c
        return out

    # -- the fixed subfield Q(y), y = z + 1/z --

    @property
    def fixed_degree(self) -> int:
        """Degree of Q(y) over Q.  Self-conjugate irreducibles are either
        z -/+ 1 or have even degree."""
        return 1 if self.degree == 1 else self.degree // 2

    def y_elem(self) -> "ResidueElem":
        return self.gen() + ResidueElem(self, tuple(self._z_inv))

    def _columns(self):
        if self._y_columns is None:
            m = self.fixed_degree
            cols = []
            power = self.one()
            y = self.y_elem()
            for _ in range(m):
                cols.append(list(power.coeffs) + [Fraction(0)] * (
                    self.degree - len(power.coeffs)))
                power = power * y
            self._y_columns = cols
        return self._y_columns

    def express_in_y(self, e: "ResidueElem") -> list[Fraction]:
        """Dense coefficients g with e = g(y), or ValueError if e is not
        fixed by the involution."""
        cols = self._columns()
        m = len(cols)
        # solve the degree x m system by elimination on an augmented matrix
        aug = [[cols[j][i] for j in range(m)] + [
            e.coeffs[i] if i < len(e.coeffs) else Fraction(0)]
            for i in range(self.degree)]
        sol = [Fraction(0)] * m
        row = 0
        pivots = []
        for col in range(m):
            piv = next((r for r in range(row, self.degree) if aug[r][col]), None)
            if piv is None:
                continue
            aug[row], aug[piv] = aug[piv], aug[row]
            pv = aug[row][col]
            aug[row] = [x / pv for x in aug[row]]
            for r in range(self.degree):
                if r != row and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
            pivots.append(col)
            row += 1
        for r in range(row, self.degree):
            if aug[r][m]:
                raise ValueError("element is not in the fixed subfield")
        for r, col in enumerate(pivots):
            sol[col] = aug[r][m]
        return polys.trim(sol)

    def y_minimal_poly(self) -> list[Fraction]:
        """Monic minimal polynomial of y = z + 1/z over Q."""
        if self._y_min_poly is None:
            if self.degree == 1:
                a = -self.modulus[0]  # the root of z - a
                self._y_min_poly = polys.trim([-(a + 1 / a), Fraction(1)])
            else:
                self._y_min_poly = polys.monic(
                    polys.palindromic_to_y(self.modulus))
        return self._y_min_poly


class ResidueElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: ResidueField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, ResidueElem):
            if other.field is not self.field and other.field.modulus != self.field.modulus:
                raise ValueError("mixed residue fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.elem([other])
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.field.elem(polys.add(list(self.coeffs), list(o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return ResidueElem(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.field.elem(polys.mul(list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> "ResidueElem":
        if not self.coeffs:
            raise ZeroDivisionError("zero has no inverse")
        g, s, _ = polys.ext_gcd(list(self.coeffs), self.field.modulus)
        if polys.deg(g) != 0:
            raise ValueError("modulus is not irreducible")
        return self.field.elem(polys.scal(1 / g[0], s))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self) -> "ResidueElem":
        return self.field.bar_elem(self)

    def one(self) -> "ResidueElem":
        return self.field.one()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((tuple(self.field.modulus), self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "Res(0)"
        terms = " + ".join(
            f"{c}*z^{i}" if i else f"{c}" for i, c in enumerate(self.coeffs) if c
        )
        return f"Res({terms})"
