"""Linking forms over the rational Laurent polynomial ring.

A torsion module is presented by a square matrix with nonzero determinant
and normalized to its elementary divisor chain d_1 | ... | d_r.  For each
self-conjugate irreducible factor p and level l the pairing induces a
hermitian form over Q[z]/(p); its signatures at the unit-circle roots of p
assemble into the multisignature.  Conjugate factor pairs and factors with
no unit-circle roots contribute hyperbolically and carry no signature.

Sign conventions.  A self-conjugate even-degree factor satisfies
p = z^{2m} bar(p); the symmetry scalar of the level-l auxiliary form is
epsilon z^{2ml}.  The normalizing unit u with u/bar(u) equal to that scalar
is only canonical up to the fixed field, so the signature at each root
z = e^{i theta} is oriented by requiring u(e^{i theta}) to be a positive
real multiple of e^{im l theta} (epsilon = +1) or of i e^{im l theta}
(epsilon = -1).  On top of that, the reported value at a root is the
signature of the real localization at that root's quadratic z^2 - y0 z + 1:
splitting off the other roots of p rescales an odd-level form by
prod (y0 - y_other) = g'(y0), with g the minimal polynomial of y = z + 1/z,
so odd levels also carry sign(g'(y0)).  Reported values are signatures of
the underlying real form: twice the hermitian signature for complex residue
fields, plain signatures at z = +-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from wittkit.errors import (
    NotPTorsion,
    NotSelfConjugate,
    NotTorsion,
    SingularForm,
)
from wittkit.exact import polys
from wittkit.exact.factor import factor_rational_poly
from wittkit.exact.laurent import LaurentPoly, is_self_conjugate
from wittkit.exact.matrix import Matrix
from wittkit.exact.ratfunc import RatFunc
from wittkit.exact.residue import ResidueField
from wittkit.exact.roots import (
    DEFAULT_PRECISION,
    CertifiedRoot,
    hermitian_signature_at_root,
    signature_of_symmetric,
    unit_circle_roots,
)
from wittkit.exact.snf import smith_normal_form

# Global orientation of every reported signature; fixed once by the trefoil
# calibration (total odd-level signature -2 at theta = pi/3).
SIGMA_SIGN = 1


def _as_laurent(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, RatFunc):
        return x.as_laurent()
    return LaurentPoly.const(x)


def _as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    return RatFunc.make(_as_laurent(x))


def _monic_ordinary(p: LaurentPoly) -> LaurentPoly:
    """Strip the z-power unit and rescale to a monic ordinary polynomial."""
    dense, _ = p.ordinary()
    lead = dense[-1]
    return LaurentPoly.from_dense([c / lead for c in dense])


def _dense(p: LaurentPoly) -> list:
    dense, off = p.ordinary()
    if off != 0:
        raise ValueError("expected an ordinary polynomial")
    return dense


def _valuation(d: LaurentPoly, p: LaurentPoly) -> int:
    num = _dense(_monic_ordinary(d))
    div = _dense(_monic_ordinary(p))
    count = 0
    while len(num) >= len(div):
        q, r = polys.divmod_poly(num, div)
        if r:
            break
        num = q if q else [Fraction(0)]
        count += 1
        if num == [Fraction(1)] or len(num) == 1:
            break
    return count


def _factor_key(p: LaurentPoly) -> tuple:
    return tuple(_dense(_monic_ordinary(p)))


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------

@dataclass
class LaurentModule:
    """Torsion module (+) A/(d_i) with its elementary divisor chain (units
    dropped, each d_i monic ordinary with nonzero constant term).

    basis_change holds the Smith decomposition of the presentation and
    kept_indices the diagonal positions whose divisors were not units, so
    generators can be traced back to the presentation basis."""

    presentation: Matrix
    divisors: list
    basis_change: object
    torsion_mode: str
    kept_indices: list = None

    @property
    def rank(self) -> int:
        return len(self.divisors)

    @property
    def dimension_q(self) -> int:
        return sum(len(_dense(d)) - 1 for d in self.divisors)

    @property
    def is_zero(self) -> bool:
        return not self.divisors

    def total_divisor(self) -> LaurentPoly:
        out = LaurentPoly.one()
        for d in self.divisors:
            out = out * d
        return out


def decompose_module(presentation, torsion_mode: str = "Q") -> LaurentModule:
    """Smith normal form over the Laurent ring; P mode additionally demands
    every divisor be invertible at z = 1, the condition that makes 1 - z act
    invertibly on the module."""
    if torsion_mode not in ("P", "Q"):
        raise ValueError("torsion_mode must be 'P' or 'Q'")
    rows = presentation.rows if isinstance(presentation, Matrix) else presentation
    m = Matrix([[_as_laurent(x) for x in row] for row in rows])
    if m.nrows != m.ncols:
        raise ValueError("presentation must be square")
    res = smith_normal_form(m, ring="Q[z,z^-1]")
    if any(d.is_zero() for d in res.divisors):
        raise NotTorsion("presentation is singular over the fraction field")
    kept = [i for i, d in enumerate(res.divisors) if not d.is_unit()]
    divisors = [_monic_ordinary(res.divisors[i]) for i in kept]
    if torsion_mode == "P":
        for d in divisors:
            if d(1) == 0:
                raise NotPTorsion(f"divisor {d!r} vanishes at z = 1")
    return LaurentModule(m, divisors, res, torsion_mode, kept)


def level_multiplicities(module: LaurentModule, p) -> dict[int, int]:
    """How many divisors carry each positive p-adic valuation."""
    p = _monic_ordinary(_as_laurent(p))
    out: dict[int, int] = {}
    for d in module.divisors:
        v = _valuation(d, p)
        if v:
            out[v] = out.get(v, 0) + 1
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# linking forms
# ---------------------------------------------------------------------------

class LaurentLinkingForm:
    """Nonsingular epsilon-symmetric linking form on a Laurent torsion
    module, with the pairing matrix written in the divisor basis."""

    def __init__(self, module: LaurentModule, pairing, epsilon: int,
                 validate: bool = True):
        if epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        rows = pairing.rows if isinstance(pairing, Matrix) else pairing
        lam = [[_as_ratfunc(x) for x in row] for row in rows]
        r = module.rank
        if len(lam) != r or any(len(row) != r for row in lam):
            raise ValueError("pairing shape does not match the divisor count")
        self.module = module
        self.pairing = Matrix(lam)
        self.epsilon = epsilon
        if validate:
            self._validate()

    def _validate(self):
        eps = self.epsilon
        lam = self.pairing
        divisors = self.module.divisors
        r = self.module.rank
        for i in range(r):
            for j in range(r):
                entry = lam[i, j]
                if not entry.class_equals(lam[j, i].bar() * Fraction(eps)):
                    raise ValueError("pairing breaks epsilon-symmetry")
                if not (entry * divisors[i]).is_laurent():
                    raise ValueError(
                        "pairing not annihilated by the row divisor")
                if not (entry * divisors[j].bar()).is_laurent():
                    raise ValueError(
                        "pairing not annihilated by the column divisor")
        if not self._adjoint_bijective():
            raise SingularForm("adjoint T -> T^ is not an isomorphism")

    def _adjoint_bijective(self) -> bool:
        """The Q-linear map u |-> (sum_j d_i lambda_ij u_j mod d_i) must be
        a bijection of a sum of residue fields with itself; conjugation on
        the inputs is a Q-linear bijection, so it drops out."""
        divisors = self.module.divisors
        r = self.module.rank
        fields = [ResidueField(_dense(d)) for d in divisors]
        dims = [len(_dense(d)) - 1 for d in divisors]
        total = sum(dims)
        if total == 0:
            return True
        offsets = [sum(dims[:i]) for i in range(r)]
        cols = []
        for j in range(r):
            numerators = []
            for i in range(r):
                num = self.pairing[i, j] * divisors[i]
                numerators.append(fields[i].from_laurent(num.as_laurent()))
            for b in range(dims[j]):
                col = [Fraction(0)] * total
                for i in range(r):
                    shifted = numerators[i] * fields[i].gen() ** b
                    for a, c in enumerate(shifted.coeffs):
                        col[offsets[i] + a] = c
                cols.append(col)
        big = Matrix([[cols[j][i] for j in range(total)] for i in range(total)])
        return big.det() != 0

    # -- constructions --

    def direct_sum(self, other: "LaurentLinkingForm") -> "LaurentLinkingForm":
        if self.epsilon != other.epsilon:
            raise ValueError("direct sum needs matching symmetry")
        if self.module.torsion_mode != other.module.torsion_mode:
            raise ValueError("direct sum needs matching torsion mode")
        pres = Matrix.block_diag(
            [self.module.presentation, other.module.presentation],
            LaurentPoly.zero(),
        )
        # concatenated divisors sorted by degree; not a divisibility chain
        # in general, which nothing downstream requires
        divisors = sorted(
            self.module.divisors + other.module.divisors,
            key=lambda d: (len(_dense(d)), _dense(d)),
        )
        module = LaurentModule(pres, divisors, None, self.module.torsion_mode)
        r1, r2 = self.module.rank, other.module.rank
        perm = sorted(
            range(r1 + r2),
            key=lambda k: (
                len(_dense((self.module.divisors + other.module.divisors)[k])),
                _dense((self.module.divisors + other.module.divisors)[k]),
            ),
        )
        zero = RatFunc.zero()
        combined = [[zero] * (r1 + r2) for _ in range(r1 + r2)]
        for a in range(r1):
            for b in range(r1):
                combined[a][b] = self.pairing[a, b]
        for a in range(r2):
            for b in range(r2):
                combined[r1 + a][r1 + b] = other.pairing[a, b]
        gram = [[combined[perm[i]][perm[j]] for j in range(r1 + r2)]
                for i in range(r1 + r2)]
        return LaurentLinkingForm(module, gram, self.epsilon, validate=False)

    def negate(self) -> "LaurentLinkingForm":
        gram = [[-self.pairing[i, j] for j in range(self.module.rank)]
                for i in range(self.module.rank)]
        return LaurentLinkingForm(self.module, gram, self.epsilon,
                                  validate=False)


# ---------------------------------------------------------------------------
# auxiliary hermitian forms
# ---------------------------------------------------------------------------

@dataclass
class AuxiliaryHermitian:
    factor: LaurentPoly
    level: int
    field: ResidueField
    gram: Matrix  # ResidueElem entries
    symmetry: int  # +1 after normalization; -1 only for skew real residue
    unit: object = None  # normalizing unit as a ResidueElem, when one is used

    @property
    def rank(self) -> int:
        return self.gram.nrows


def _hilbert90_unit(field: ResidueField, v):
    """u with v = u / bar(u): u = c0 + v bar(c0) works for the first probe
    c0 making it nonzero."""
    probes = [field.one(), field.gen()]
    probes.append(field.one() + field.gen())
    probes.extend(field.gen() ** k for k in range(2, field.degree + 1))
    for c0 in probes:
        u = c0 + v * field.bar_elem(c0)
        if not u.is_zero():
            return u
    raise ArithmeticError("no nonzero Hilbert-90 probe; involution broken")


def auxiliary_hermitian(form: LaurentLinkingForm, p, l: int) -> AuxiliaryHermitian:
    """Level-l auxiliary form at a self-conjugate irreducible factor: on the
    divisor classes of exact p-valuation l, the residue of p^l lambda(u_i,
    u_j) mod p, normalized to a hermitian form by a Hilbert-90 unit."""
    p = _monic_ordinary(_as_laurent(p))
    unit_p = is_self_conjugate(p)
    if unit_p is None:
        raise NotSelfConjugate(
            "factor pairs with its conjugate; the pair contributes "
            "hyperbolically and carries no auxiliary form")
    if l < 1:
        raise ValueError("level must be >= 1")
    module = form.module
    field = ResidueField(_dense(p))
    vals = [_valuation(d, p) for d in module.divisors]
    idx = [i for i, v in enumerate(vals) if v == l]

    p_pow = p**l
    cof = {}
    for i in idx:
        dense_d = _dense(module.divisors[i])
        q, r = polys.divmod_poly(dense_d, _dense(p_pow))
        if r:
            raise ArithmeticError("valuation bookkeeping broke")
        cof[i] = LaurentPoly.from_dense(q)

    entries = []
    for i in idx:
        row = []
        for j in idx:
            e = form.pairing[i, j] * (p_pow * cof[i] * cof[j].bar())
            if not e.is_laurent():
                raise SingularForm(
                    "pairing entry escapes the coefficient ring; the input "
                    "form is not a linking form on the stated module")
            row.append(field.from_laurent(e.as_laurent()))
        entries.append(row)
    gram0 = Matrix(entries)

    v = field.from_laurent(unit_p**l)
    if form.epsilon == -1:
        v = -v
    if field.degree == 1:
        sym = 1 if v == field.one() else -1
        aux = AuxiliaryHermitian(p, l, field, gram0, sym, None)
    else:
        u = _hilbert90_unit(field, v)
        ubar = field.bar_elem(u)
        gram = gram0.map(lambda x: ubar * x)
        aux = AuxiliaryHermitian(p, l, field, gram, 1, u)
        for i in range(len(idx)):
            for j in range(len(idx)):
                assert aux.gram[i, j] == field.bar_elem(aux.gram[j, i])
    if idx and aux.gram.det().is_zero():
        raise SingularForm("auxiliary form is singular over the residue field")
    return aux


# ---------------------------------------------------------------------------
# multisignature
# ---------------------------------------------------------------------------

class DWMultiSignatureLaurent:
    """Association (factor, certified root, level) -> signature of the real
    form, plus rank-only entries where the auxiliary is skew over a real
    residue field and notes for conjugate factor pairs."""

    def __init__(self, signatures=None, roots=None, rank_only=None,
                 conjugate_pairs=None):
        self.signatures = dict(signatures or {})
        self.roots = dict(roots or {})
        self.rank_only = dict(rank_only or {})
        self.conjugate_pairs = list(conjugate_pairs or [])

    @property
    def all_zero(self) -> bool:
        return all(s == 0 for s in self.signatures.values())

    def entries(self):
        return sorted(self.signatures.items())

    def get(self, factor, root_index: int, level: int):
        key = (_factor_key(_as_laurent(factor)), root_index, level)
        return self.signatures.get(key)

    def theta(self, factor, root_index: int) -> CertifiedRoot:
        key = factor if isinstance(factor, tuple) \
            else _factor_key(_as_laurent(factor))
        return self.roots[(key, root_index)]

    def __add__(self, other: "DWMultiSignatureLaurent"):
        sigs = dict(self.signatures)
        for k, s in other.signatures.items():
            sigs[k] = sigs.get(k, 0) + s
        ranks = dict(self.rank_only)
        for k, s in other.rank_only.items():
            ranks[k] = ranks.get(k, 0) + s
        roots = dict(self.roots)
        roots.update(other.roots)
        pairs = list(self.conjugate_pairs)
        for pr in other.conjugate_pairs:
            if pr not in pairs:
                pairs.append(pr)
        return DWMultiSignatureLaurent(sigs, roots, ranks, pairs)

    def __neg__(self):
        return DWMultiSignatureLaurent(
            {k: -s for k, s in self.signatures.items()},
            self.roots, dict(self.rank_only), list(self.conjugate_pairs))

    def __eq__(self, other):
        return (
            isinstance(other, DWMultiSignatureLaurent)
            and self.signatures == other.signatures
            and self.rank_only == other.rank_only
        )

    def __repr__(self):
        inner = ", ".join(
            f"(deg {len(k[0]) - 1} factor, root {k[1]}, l={k[2]}): {s:+d}"
            for k, s in self.entries()
        )
        return f"DWMultiSignatureLaurent({{{inner}}})"


def _phase_sign(u, shift: int, root: CertifiedRoot, epsilon: int) -> int:
    """Certified sign of u(e^{i theta}) e^{-i shift theta} (epsilon +1,
    where that number is real) or of its ratio to i (epsilon -1, where it
    is purely imaginary and sin theta > 0 keeps the sign readable)."""
    acc: list = []
    for j, c in enumerate(u.coeffs):
        if c == 0:
            continue
        k = j - shift
        if epsilon == 1:
            term = polys.scal(Fraction(c, 2), polys.chebyshev_q(abs(k)))
        else:
            term = polys.scal(Fraction(c), polys.chebyshev_s(k))
        acc = polys.add(acc, term)
    s = root.sign_of(acc)
    if s == 0:
        raise ArithmeticError("normalizing unit vanished at a root")
    return s


def dw_multisignature_laurent(
    form: LaurentLinkingForm,
    precision: Fraction = DEFAULT_PRECISION,
) -> DWMultiSignatureLaurent:
    """Signature of the normalized auxiliary form at every unit-circle root
    of every self-conjugate factor, at every occupied level."""
    module = form.module
    out = DWMultiSignatureLaurent()
    if module.is_zero:
        return out
    _, factors = factor_rational_poly(module.total_divisor())
    seen_pairs = set()
    for p, _mult in factors:
        pk = _factor_key(p)
        if is_self_conjugate(p) is None:
            partner = _factor_key(_monic_ordinary(p.bar()))
            pair = tuple(sorted((pk, partner)))
            if pair not in seen_pairs:
                seen_pairs.add(pair)
                out.conjugate_pairs.append(pair)
            continue
        levels = level_multiplicities(module, p)
        deg = len(pk) - 1
        roots = unit_circle_roots(p, precision)
        if not roots:
            continue
        for ridx, root in enumerate(roots):
            out.roots[(pk, ridx)] = root
        for l in levels:
            aux = auxiliary_hermitian(form, p, l)
            if deg == 1:
                if aux.symmetry == 1:
                    plain = Matrix([
                        [aux.gram[i, j].coeffs[0] if aux.gram[i, j].coeffs
                         else Fraction(0) for j in range(aux.rank)]
                        for i in range(aux.rank)
                    ])
                    out.signatures[(pk, 0, l)] = (
                        SIGMA_SIGN * signature_of_symmetric(plain))
                else:
                    out.rank_only[(pk, l)] = aux.rank
                continue
            half = deg // 2
            for ridx, root in enumerate(roots):
                flip = _phase_sign(aux.unit, half * l, root, form.epsilon)
                orient = 1
                if l % 2:
                    # localizing p^l at this root's real quadratic rescales
                    # the level form by prod (y0 - y_other)^l = g'(y0)^l
                    orient = root.sign_of(polys.derivative(root.y_poly))
                    if orient == 0:
                        raise ArithmeticError(
                            "square factor leaked into the root data")
                sig = hermitian_signature_at_root(aux.gram, root)
                out.signatures[(pk, ridx, l)] = (
                    SIGMA_SIGN * flip * orient * 2 * sig)
    return out


def is_hyperbolic_over_R(form: LaurentLinkingForm) -> bool:
    """The real-coefficient double Witt class vanishes exactly when every
    signature entry does; skew real-residue levels never obstruct."""
    return dw_multisignature_laurent(form).all_zero


def submodule_dimension_q(module: LaurentModule, cols: Matrix) -> int:
    """Q-dimension of the submodule generated by the given column vectors
    (Laurent entries, coordinates in the divisor basis).  The span of the
    z-orbit stabilizes because multiplication by z is a linear bijection."""
    fields = [ResidueField(_dense(d)) for d in module.divisors]
    dims = [f.degree for f in fields]
    offsets = [sum(dims[:i]) for i in range(len(dims))]
    total = sum(dims)

    def flatten(blocks):
        out = [Fraction(0)] * total
        for i, e in enumerate(blocks):
            for a, c in enumerate(e.coeffs):
                out[offsets[i] + a] = c
        return out

    vecs = []
    for j in range(cols.ncols):
        vecs.append([fields[i].from_laurent(cols[i, j])
                     for i in range(len(fields))])
    if not vecs or total == 0:
        return 0
    span = [flatten(v) for v in vecs]
    rank = Matrix(span).rank()
    frontier = vecs
    while True:
        frontier = [[fields[i].gen() * e for i, e in enumerate(v)]
                    for v in frontier]
        span.extend(flatten(v) for v in frontier)
        new_rank = Matrix(span).rank()
        if new_rank == rank:
            return rank
        rank = new_rank


def is_lagrangian_submodule(form: LaurentLinkingForm, cols) -> bool:
    """Whether the submodule generated by the columns is a lagrangian: the
    pairing vanishes on it and it fills half the Q-dimension, which for a
    nonsingular form forces it to equal its own annihilator."""
    if not isinstance(cols, Matrix):
        cols = Matrix([[_as_laurent(x) for x in row] for row in cols])
    module = form.module
    r = module.rank
    if cols.nrows != r:
        raise ValueError("column vectors do not live in the module")
    for i in range(cols.ncols):
        for j in range(cols.ncols):
            acc = RatFunc.zero()
            for a in range(r):
                for b in range(r):
                    acc = acc + form.pairing[a, b] * (
                        cols[a, i] * cols[b, j].bar())
            if not acc.is_laurent():
                return False
    total = module.dimension_q
    if total % 2 != 0:
        return False
    return submodule_dimension_q(module, cols) == total // 2


def witt_forgetful_laurent(ms: DWMultiSignatureLaurent) -> dict:
    """Odd-level sums per (factor, root): the single Witt-group image whose
    vanishing is the slice-type necessary condition."""
    out: dict = {}
    for (pk, ridx, l), s in ms.signatures.items():
        key = (pk, ridx)
        out.setdefault(key, 0)
        if l % 2 == 1:
            out[key] += s
    return out
