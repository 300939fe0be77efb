"""Knot pipeline: Seifert matrix in, obstruction report out.

The report aggregates the Alexander polynomial, the rational Blanchfield
form, its multisignature, certified Levine-Tristram signatures, and the
slice / doubly-slice flags.  Everything is exact; angles on the unit circle
enter as rational turns t (omega = e^{2 pi i t}) so signatures stay
certified.  Vanishing obstructions are reported as "no_obstruction_found",
never as a sliceness certificate, and every report carries that caveat.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from wittkit.errors import (
    MixedSymmetry,
    NotAKnotForm,
    NotSymmetricCase,
    SignatureNotDivisibleBy8,
    SingularAtRoot,
    SingularForm,
    SingularSeifertForm,
)
from wittkit.exact.factor import cyclotomic_polynomial, factor_rational_poly
from wittkit.exact.laurent import LaurentPoly, is_self_conjugate
from wittkit.exact.matrix import Matrix
from wittkit.exact.ratfunc import RatFunc
from wittkit.exact.residue import ResidueField
from wittkit.exact.roots import (
    DEFAULT_PRECISION,
    CertifiedRoot,
    hermitian_signature_at_root,
    minimal_poly_of_2cos,
    signature_of_symmetric,
    unit_circle_roots,
)
from wittkit.laurent_forms import (
    SIGMA_SIGN,
    DWMultiSignatureLaurent,
    LaurentLinkingForm,
    dw_multisignature_laurent,
    witt_forgetful_laurent,
)
from wittkit.seifert import (
    SeifertForm,
    SeifertSubmodule,
    covering_seifert,
    hyperbolic_witness_sum,
    is_complementary,
    verify_seifert_lagrangian,
)

COMPLETENESS_CAVEAT = (
    "obstructions are evaluated over the real numbers; "
    "'no_obstruction_found' is a necessary-condition report, not a "
    "sliceness certificate"
)
CLASSICAL_CAVEAT = (
    "dimension 1: the algebraic invariants are realized by every class "
    "but do not determine classical concordance"
)


class KnotInput:
    """A knot presented by an integer Seifert matrix.  The symmetrized
    matrix must be unimodular; dimension_hint n = 2k+1, when given, must
    match epsilon = (-1)^(k+1)."""

    def __init__(self, name: str, psi, epsilon: int,
                 dimension_hint: int | None = None):
        self.name = str(name)
        try:
            self.seifert_form = SeifertForm(psi, epsilon, "Z")
        except (SingularSeifertForm, ValueError) as exc:
            raise NotAKnotForm(str(exc))
        self.psi = self.seifert_form.psi
        self.epsilon = epsilon
        if dimension_hint is not None:
            if dimension_hint < 1 or dimension_hint % 2 == 0:
                raise NotAKnotForm("dimension must be a positive odd integer")
            k = (dimension_hint - 1) // 2
            if epsilon != (-1) ** (k + 1):
                raise NotAKnotForm(
                    "epsilon does not match the stated dimension")
        self.dimension_hint = dimension_hint

    @property
    def rank(self) -> int:
        return self.psi.nrows


@dataclass
class ObstructionReport:
    name: str
    alexander: LaurentPoly
    factorization: list
    multisignature: DWMultiSignatureLaurent
    slice_obstructed: str
    doubly_slice_obstructed: str
    rochlin: int | None
    witnesses: tuple | None
    notes: list
    convention: dict


def connected_sum(a: KnotInput, b: KnotInput) -> KnotInput:
    if a.epsilon != b.epsilon:
        raise MixedSymmetry("summands have different symmetry signs")
    psi = Matrix.block_diag([a.psi, b.psi])
    hint = a.dimension_hint if a.dimension_hint == b.dimension_hint else None
    return KnotInput(f"{a.name} # {b.name}", psi.rows, a.epsilon, hint)


def knot_inverse(k: KnotInput) -> KnotInput:
    """Concordance inverse: negated Seifert matrix.  The negated transpose
    is an equivalent choice; every reported invariant agrees on the two."""
    return KnotInput(f"-{k.name}", k.psi.map(lambda x: -x).rows, k.epsilon,
                     k.dimension_hint)


def alexander_polynomial(k: KnotInput) -> LaurentPoly:
    """det((1-e) + ez), shifted to an ordinary polynomial with nonzero
    constant term and positive leading coefficient.  Evaluating the
    determinant at 1 gives det(identity) = 1, so p(1) = +-1 exactly."""
    f = k.seifert_form
    n = f.rank
    if n == 0:
        return LaurentPoly.one()
    e = f.e
    pres = Matrix([[LaurentPoly({0: (1 if i == j else 0) - e[i, j],
                                 1: e[i, j]})
                    for j in range(n)] for i in range(n)])
    det = pres.map(RatFunc.make).det().as_laurent()
    dense = det.ordinary()[0]
    if dense[-1] < 0:
        dense = [-c for c in dense]
    alex = LaurentPoly.from_dense(dense)
    assert alex(Fraction(1)) in (1, -1)
    return alex


def blanchfield_form(k: KnotInput) -> LaurentLinkingForm:
    return covering_seifert(k.seifert_form)


def _as_turn(t) -> Fraction:
    if isinstance(t, float):
        raise TypeError(
            "pass the turn exactly (Fraction, int, or string), not a float")
    return Fraction(t) % 1


def levine_tristram_signature(k: KnotInput, turn,
                              precision: Fraction = DEFAULT_PRECISION) -> int:
    """Certified signature of (1-omega) psi + (1-conj(omega)) psi^T at
    omega = e^{2 pi i turn}.  The matrix is hermitian over the cyclotomic
    field of the turn's denominator, so the signature is decided exactly."""
    t = _as_turn(turn)
    if t > Fraction(1, 2):
        t = 1 - t  # conjugate symmetry
    psi = k.seifert_form.psi
    n = k.rank
    if n == 0:
        return 0
    if t == 0:
        raise SingularAtRoot("omega = 1 degenerates the form")
    if t == Fraction(1, 2):
        m = (psi + psi.transpose()).map(lambda x: 2 * x)
        if m.det() == 0:
            raise SingularAtRoot("omega = -1 is an Alexander root")
        return signature_of_symmetric(m)
    d = t.denominator
    phi = cyclotomic_polynomial(d)
    field = ResidueField(phi)
    herm = Matrix([
        [field.from_laurent(LaurentPoly({
            0: psi[i, j] + psi[j, i],
            1: -psi[i, j],
            -1: -psi[j, i]}))
         for j in range(n)] for i in range(n)])
    y_poly, lo, hi = minimal_poly_of_2cos(t.numerator, d)
    root = CertifiedRoot(y_poly, lo, hi, LaurentPoly.from_dense(phi))
    root.refine(precision)
    try:
        return hermitian_signature_at_root(herm, root)
    except SingularForm:
        raise SingularAtRoot(f"omega at turn {t} is an Alexander root")


def _circle_roots_of_alexander(k: KnotInput, precision: Fraction):
    """Unit-circle Alexander roots as (key, root_index, CertifiedRoot),
    ordered by increasing angle, with pairwise disjoint y-brackets."""
    alex = alexander_polynomial(k)
    _, factors = factor_rational_poly(alex)
    marked = []
    for p, _mult in factors:
        if is_self_conjugate(p) is None:
            continue
        key = tuple(p.ordinary()[0])
        for ridx, root in enumerate(unit_circle_roots(p, precision)):
            marked.append((key, ridx, root))
    # distinct irreducible factors never share a root, so refinement
    # eventually separates every pair of brackets
    changed = True
    while changed:
        changed = False
        for i in range(len(marked)):
            for j in range(i + 1, len(marked)):
                a, b = marked[i][2], marked[j][2]
                if a.lo <= b.hi and b.lo <= a.hi:
                    width = max(a.hi - a.lo, b.hi - b.lo, precision)
                    a.refine(width / 4)
                    b.refine(width / 4)
                    changed = True
    marked.sort(key=lambda item: (-item[2].hi, -item[2].lo))
    return marked


def _turn_in_y_gap(y_low: Fraction, y_high: Fraction) -> Fraction:
    """A small-denominator rational turn t whose y = 2 cos(2 pi t) bracket
    certifies strictly inside (y_low, y_high)."""
    t_from = math.acos(min(1.0, max(-1.0, float(y_high) / 2))) / (2 * math.pi)
    t_to = math.acos(min(1.0, max(-1.0, float(y_low) / 2))) / (2 * math.pi)
    pad = (t_to - t_from) * 0.2
    a_lo, a_hi = t_from + pad, t_to - pad
    d = 1
    while d < 10**6:
        d += 1
        num = math.ceil(a_lo * d)
        while num / d <= a_hi:
            t = Fraction(num, d)
            if 0 < t < Fraction(1, 2):
                y_poly, lo, hi = minimal_poly_of_2cos(t.numerator,
                                                      t.denominator)
                probe = CertifiedRoot(y_poly, lo, hi)
                probe.refine(Fraction(1, 2**32))
                if y_low < probe.lo and probe.hi < y_high:
                    return t
            num += 1
    raise ArithmeticError("no sampling angle found between roots")


def lt_jumps(k: KnotInput,
             precision: Fraction = DEFAULT_PRECISION) -> dict:
    """Jump of the Levine-Tristram signature across each unit-circle
    Alexander root, keyed like the multisignature entries: the signature is
    sampled at certified angles strictly between consecutive roots.

    Skew forms only.  The sampled matrix (1-w) psi + (1-conj(w)) psi^T
    degenerates exactly on the Alexander roots when epsilon = -1; for
    epsilon = +1 its singular set is det(z psi - psi^T) instead, so the
    signature is not locally constant between Alexander roots and the
    jump bookkeeping here would be meaningless."""
    if k.epsilon != -1:
        raise ValueError(
            "signature jumps across Alexander roots are defined for "
            "epsilon = -1 Seifert forms only")
    marked = _circle_roots_of_alexander(k, precision)
    if not marked:
        return {}
    walls = [Fraction(2)]
    for _key, _ridx, root in marked:
        walls.append(root.hi)
        walls.append(root.lo)
    walls.append(Fraction(-2))
    values = []
    for g in range(len(marked) + 1):
        y_high = walls[2 * g]
        y_low = walls[2 * g + 1]
        t = _turn_in_y_gap(y_low, y_high)
        values.append(levine_tristram_signature(k, t, precision))
    return {
        (key, ridx): values[i + 1] - values[i]
        for i, (key, ridx, _root) in enumerate(marked)
    }


def obstruction_flags(ms: DWMultiSignatureLaurent) -> tuple[str, str]:
    """(slice, doubly-slice) flags: the slice-type test sees only the
    odd-level sums, the doubly-slice test every signature entry."""
    forget = witt_forgetful_laurent(ms)
    slice_flag = "yes" if any(v != 0 for v in forget.values()) \
        else "no_obstruction_found"
    ds_flag = "yes" if not ms.all_zero else "no_obstruction_found"
    return slice_flag, ds_flag


def slice_obstruction(k: KnotInput,
                      precision: Fraction = DEFAULT_PRECISION) -> str:
    ms = dw_multisignature_laurent(blanchfield_form(k), precision)
    return obstruction_flags(ms)[0]


def doubly_slice_obstruction(k: KnotInput,
                             precision: Fraction = DEFAULT_PRECISION) -> str:
    ms = dw_multisignature_laurent(blanchfield_form(k), precision)
    return obstruction_flags(ms)[1]


def rochlin_invariant(k: KnotInput) -> int:
    """(signature / 8) mod 2 of the symmetrized Seifert matrix; defined
    only in the symmetric case, where that signature must be divisible
    by 8 for the input to be realizable."""
    if k.epsilon != 1:
        raise NotSymmetricCase("the residue invariant needs epsilon = +1")
    sig = signature_of_symmetric(k.seifert_form.theta) if k.rank else 0
    if sig % 8 != 0:
        raise SignatureNotDivisibleBy8(
            f"signature {sig} of the symmetrization is not divisible by 8")
    return (sig // 8) % 2


def _mirror_halves(psi: Matrix) -> Matrix | None:
    """Top-left block A when psi is exactly blockdiag(A, -A)."""
    n = psi.nrows
    if n == 0 or n % 2:
        return None
    h = n // 2
    for i in range(h):
        for j in range(h):
            if psi[i, h + j] != 0 or psi[h + i, j] != 0:
                return None
            if psi[h + i, h + j] != -psi[i, j]:
                return None
    return Matrix([[psi[i, j] for j in range(h)] for i in range(h)])


def analyze(k: KnotInput,
            precision: Fraction = DEFAULT_PRECISION) -> ObstructionReport:
    """Full report; deterministic given the input and precision."""
    alex = alexander_polynomial(k)
    _, factorization = factor_rational_poly(alex)
    ms = dw_multisignature_laurent(blanchfield_form(k), precision)
    slice_flag, ds_flag = obstruction_flags(ms)
    notes = [COMPLETENESS_CAVEAT]
    if k.dimension_hint == 1:
        notes.append(CLASSICAL_CAVEAT)

    rochlin = None
    if k.epsilon == 1:
        try:
            rochlin = rochlin_invariant(k)
        except SignatureNotDivisibleBy8 as exc:
            notes.append(f"residue invariant unavailable: {exc}")

    witnesses = None
    half = _mirror_halves(k.psi)
    if half is not None and half.nrows:
        base = SeifertForm(half.rows, k.epsilon, "Z")
        fsum = base.direct_sum(base.negate())
        diag, twist = hyperbolic_witness_sum(base)
        if (verify_seifert_lagrangian(fsum, diag) == "split_lagrangian"
                and verify_seifert_lagrangian(fsum, twist)
                == "split_lagrangian"
                and is_complementary(fsum, diag, twist)):
            witnesses = (diag, twist)
            notes.append(
                "the Seifert matrix splits as a form plus its negative; "
                "the diagonal and twisted-graph submodules verify as "
                "complementary split lagrangians")

    return ObstructionReport(
        name=k.name,
        alexander=alex,
        factorization=factorization,
        multisignature=ms,
        slice_obstructed=slice_flag,
        doubly_slice_obstructed=ds_flag,
        rochlin=rochlin,
        witnesses=witnesses,
        notes=notes,
        convention={"sigma_sign": SIGMA_SIGN, "precision": precision},
    )
