"""Dense matrices over the rings used in this package.

Entries are whatever supports ring arithmetic: Fraction (Z and Q),
LaurentPoly (Q[z, z^-1]), RatFunc (Q(z)) or residue field elements.  The
`ring` property reports a tag for serialization; operations themselves are
generic.  Field-only operations (det, inverse, rank) require entries with
division and are used with Fraction, RatFunc and residue elements.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from wittkit.errors import SingularMatrix
from wittkit.exact.laurent import LaurentPoly
from wittkit.exact.ratfunc import RatFunc


class Matrix:
    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        if rows:
            w = len(rows[0])
            if any(len(r) != w for r in rows):
                raise ValueError("ragged rows")
        self.rows = rows

    # ---- constructors ----

    @classmethod
    def identity(cls, n: int, one=Fraction(1)) -> "Matrix":
        zero = one - one
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, n: int, zero=Fraction(0)) -> "Matrix":
        return cls([[zero for _ in range(n)] for _ in range(m)])

    @classmethod
    def from_ints(cls, rows) -> "Matrix":
        return cls([[Fraction(x) for x in r] for r in rows])

    @classmethod
    def block_diag(cls, blocks: Sequence["Matrix"], zero=Fraction(0)) -> "Matrix":
        m = sum(b.nrows for b in blocks)
        n = sum(b.ncols for b in blocks)
        out = [[zero for _ in range(n)] for _ in range(m)]
        i0 = j0 = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    out[i0 + i][j0 + j] = b.rows[i][j]
            i0 += b.nrows
            j0 += b.ncols
        return cls(out)

    # ---- shape ----

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def ring(self) -> str:
        for r in self.rows:
            for x in r:
                if isinstance(x, RatFunc):
                    return "Q(z)"
                if isinstance(x, LaurentPoly):
                    return "Q[z,z^-1]"
                if isinstance(x, Fraction):
                    return "Q" if x.denominator != 1 else "Z"
                if isinstance(x, int):
                    return "Z"
        return "Z"

    def __getitem__(self, key):
        i, j = key
        return self.rows[i][j]

    def row(self, i: int) -> list:
        return list(self.rows[i])

    def col(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        return Matrix([[self.rows[i][j] for j in col_idx] for i in row_idx])

    # ---- generic ops ----

    def map(self, f: Callable) -> "Matrix":
        return Matrix([[f(x) for x in r] for r in self.rows])

    def transpose(self) -> "Matrix":
        return Matrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)])

    def bar(self) -> "Matrix":
        return self.map(lambda x: x.bar() if hasattr(x, "bar") else x)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        )

    def __neg__(self) -> "Matrix":
        return self.map(lambda x: -x)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch in product")
            ot = other.transpose().rows
            return Matrix(
                [[_dot(r, c) for c in ot] for r in self.rows]
            )
        return self.map(lambda x: x * other)

    def __rmul__(self, other):
        return self.map(lambda x: other * x)

    def scale(self, c) -> "Matrix":
        return self.map(lambda x: c * x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __repr__(self) -> str:
        return "Matrix(" + ", ".join(repr(r) for r in self.rows) + ")"

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("row mismatch")
        return Matrix([r1 + r2 for r1, r2 in zip(self.rows, other.rows)])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.rows and other.rows and self.ncols != other.ncols:
            raise ValueError("column mismatch")
        return Matrix(self.rows + other.rows)

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of non-square matrix")
        t = self.rows[0][0]
        for i in range(1, self.nrows):
            t = t + self.rows[i][i]
        return t

    # ---- field-entry operations ----

    def det(self):
        """Determinant by fraction-preserving Gaussian elimination; entries
        must form a field.  det of the empty matrix is 1 (Fraction)."""
        if not self.is_square():
            raise ValueError("det of non-square matrix")
        n = self.nrows
        if n == 0:
            return Fraction(1)
        a = [[_as_field(x) for x in r] for r in self.rows]
        det = None
        sign = 1
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k]), None)
            if piv is None:
                z = a[k][k]
                return z - z  # a zero of the right type
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                sign = -sign
            det = a[k][k] if det is None else det * a[k][k]
            inv_piv = a[k][k]
            for i in range(k + 1, n):
                if not a[i][k]:
                    continue
                factor = a[i][k] / inv_piv
                for j in range(k, n):
                    a[i][j] = a[i][j] - factor * a[k][j]
        return det if sign == 1 else -det

    def rank(self) -> int:
        a = [[_as_field(x) for x in r] for r in self.rows]
        m, n = self.nrows, self.ncols
        rank = 0
        row = 0
        for col in range(n):
            piv = next((i for i in range(row, m) if a[i][col]), None)
            if piv is None:
                continue
            a[row], a[piv] = a[piv], a[row]
            pv = a[row][col]
            for i in range(m):
                if i != row and a[i][col]:
                    f = a[i][col] / pv
                    for j in range(col, n):
                        a[i][j] = a[i][j] - f * a[row][j]
            rank += 1
            row += 1
            if row == m:
                break
        return rank

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        if n == 0:
            return Matrix([])
        a = [[_as_field(x) for x in r] for r in self.rows]
        one = _one_like(a[0][0])
        zero = one - one
        inv = [[one if i == j else zero for j in range(n)] for i in range(n)]
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k]), None)
            if piv is None:
                raise SingularMatrix("matrix is singular")
            a[k], a[piv] = a[piv], a[k]
            inv[k], inv[piv] = inv[piv], inv[k]
            pv = a[k][k]
            a[k] = [x / pv for x in a[k]]
            inv[k] = [x / pv for x in inv[k]]
            for i in range(n):
                if i != k and a[i][k]:
                    f = a[i][k]
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                    inv[i] = [x - f * y for x, y in zip(inv[i], inv[k])]
        return Matrix(inv)

    def charpoly(self) -> list:
        """Coefficients [c_0, ..., c_n] of det(t*I - A), computed by the
        Faddeev-LeVerrier recursion.  Entries need a ring structure together
        with division by integers (all our entry types have it)."""
        if not self.is_square():
            raise ValueError("charpoly of non-square matrix")
        n = self.nrows
        if n == 0:
            return [Fraction(1)]
        one = _one_like(self.rows[0][0])
        zero = one - one
        ident = Matrix.identity(n, one)
        coeffs = [zero] * (n + 1)
        coeffs[n] = one
        m = ident
        for k in range(1, n + 1):
            am = self * m
            ck = am.trace() * Fraction(-1, k)
            coeffs[n - k] = ck
            m = am + ident.scale(ck)
        return coeffs


def _dot(row, col):
    it = zip(row, col)
    a, b = next(it)
    total = a * b
    for a, b in it:
        total = total + a * b
    return total


def _as_field(x):
    # int entries would hit true division during elimination
    return Fraction(x) if isinstance(x, int) else x


def _one_like(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(1)
    if isinstance(x, LaurentPoly):
        return LaurentPoly.one()
    if isinstance(x, RatFunc):
        return RatFunc.one()
    one = getattr(x, "one", None)
    if one is not None:
        return one() if callable(one) else one
    raise TypeError(f"no unit element for {type(x)!r}")


def invert_ratfunc_matrix(m: Matrix) -> Matrix:
    """Inverse over Q(z); LaurentPoly or Fraction entries are promoted to
    RatFunc first.  Raises SingularMatrix when det = 0."""
    promoted = m.map(_to_ratfunc)
    return promoted.inverse()


def _to_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RatFunc.make(x)
    if isinstance(x, (int, Fraction)):
        return RatFunc.make(LaurentPoly.const(x))
    raise TypeError(f"cannot promote {type(x)!r} to RatFunc")
