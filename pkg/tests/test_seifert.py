"""Covering functors, trace recovery, and Seifert lagrangian machinery."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, assume
from hypothesis import strategies as st

from wittkit.errors import (
    NotEInvariant,
    NotNearProjection,
    NotPTorsion,
    SingularAutometricForm,
    SingularSeifertForm,
)
from wittkit.exact.laurent import LaurentPoly
from wittkit.exact.matrix import Matrix
from wittkit.exact.ratfunc import RatFunc
from wittkit.laurent_forms import (
    LaurentLinkingForm,
    decompose_module,
    dw_multisignature_laurent,
    is_lagrangian_submodule,
    level_multiplicities,
)
from wittkit.seifert import (
    AutometricForm,
    SeifertForm,
    SeifertSubmodule,
    canonical_identification,
    covering_autometric,
    covering_seifert,
    covering_submodule_image,
    hyperbolic_witness_sum,
    is_complementary,
    monodromy,
    near_projection_decompose,
    trace_chi,
    verify_roundtrip,
    verify_seifert_lagrangian,
)

TREFOIL = [[-1, 1], [0, -1]]
FIG8 = [[1, 1], [0, -1]]


def frac_matrix(rows):
    return Matrix([[Fraction(x) for x in row] for row in rows])


def random_autometric(rng, eps=None, max_rank=4, bound=5):
    """Nonsingular autometric form via the Cayley transform of a
    theta-skew generator; rejection keeps everything invertible."""
    while True:
        n = rng.randint(1, max_rank)
        e = eps if eps is not None else rng.choice([1, -1])
        m = frac_matrix([[rng.randint(-bound, bound) for _ in range(n)]
                         for _ in range(n)])
        theta = m + m.transpose().map(lambda v: v * e)
        if theta.nrows and theta.det() == 0:
            continue
        a = frac_matrix([[rng.randint(-2, 2) for _ in range(n)]
                         for _ in range(n)])
        x = a - theta.inverse() * a.transpose() * theta
        ident = Matrix.identity(n)
        if (ident - x).det() == 0:
            continue
        h = (ident - x).inverse() * (ident + x)
        try:
            return AutometricForm(theta.rows, h.rows, e)
        except (ValueError, SingularAutometricForm):
            continue


def elementary_divisor_counts(module):
    out = {}
    for d in module.divisors:
        from wittkit.exact.factor import factor_rational_poly
        _, factors = factor_rational_poly(d)
        for p, mult in factors:
            key = (tuple(p.ordinary()[0]), mult)
            out[key] = out.get(key, 0) + 1
    return out


# ---------------------------------------------------------------------------
# trace function
# ---------------------------------------------------------------------------

class TestTraceChi:
    @pytest.mark.parametrize("a", [Fraction(1), Fraction(2), Fraction(-3),
                                   Fraction(1, 2)])
    def test_geometric_anchor(self, a):
        f = RatFunc.make(LaurentPoly.one(), [a, Fraction(-1)])
        assert trace_chi(f) == 1 / a

    def test_shifted_anchor(self):
        # z/(z-a) = 1 + a/(z-a), and chi(1/(z-a)) = -1/a
        for a in (Fraction(3), Fraction(-2)):
            f = RatFunc.make(LaurentPoly.z(), [-a, Fraction(1)])
            assert trace_chi(f) == -1

    def test_vanishes_on_laurent_polynomials(self):
        assert trace_chi(LaurentPoly.zero()) == 0
        assert trace_chi(LaurentPoly({-2: Fraction(3), 5: Fraction(-1)})) == 0

    def test_linear(self):
        f = RatFunc.make(LaurentPoly.one(), [Fraction(2), Fraction(-1)])
        g = RatFunc.make(LaurentPoly.one(), [Fraction(-3), Fraction(-1)])
        assert trace_chi(f + g) == trace_chi(f) + trace_chi(g)
        seven = RatFunc.make(LaurentPoly.const(Fraction(7)))
        assert trace_chi(seven * f) == 7 * trace_chi(f)

    def test_class_invariant(self):
        f = RatFunc.make(LaurentPoly.one(), [Fraction(2), Fraction(-1)])
        bumped = f + RatFunc.make(LaurentPoly({-1: Fraction(5), 3: Fraction(1)}))
        assert trace_chi(bumped) == trace_chi(f)


# ---------------------------------------------------------------------------
# form constructors
# ---------------------------------------------------------------------------

class TestSeifertForm:
    def test_trefoil_structure(self):
        f = SeifertForm(TREFOIL, -1, "Z")
        assert f.theta == frac_matrix([[0, 1], [-1, 0]])
        assert f.e == frac_matrix([[0, 1], [-1, 1]])
        assert f.theta * f.e == f.psi

    def test_singular_theta_rejected(self):
        # psi symmetric and eps = -1 kills theta
        with pytest.raises(SingularSeifertForm):
            SeifertForm([[1, 2], [2, 1]], -1, "Z")

    def test_non_unimodular_needs_q_mode(self):
        with pytest.raises(SingularSeifertForm):
            SeifertForm([[1, 1], [0, 1]], 1, "Z")
        f = SeifertForm([[1, 1], [0, 1]], 1, "Q")
        assert f.coefficients == "Q"

    def test_integrality_enforced(self):
        with pytest.raises(ValueError):
            SeifertForm([[Fraction(1, 2)]], 1, "Z")

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            SeifertForm([[0, 1]], -1, "Z")
        with pytest.raises(ValueError):
            SeifertForm(TREFOIL, 2, "Z")
        with pytest.raises(ValueError):
            SeifertForm(TREFOIL, -1, "R")

    def test_direct_sum_demotes_coefficients(self):
        a = SeifertForm(TREFOIL, -1, "Z")
        b = SeifertForm([[Fraction(1, 2), 1], [0, Fraction(1, 2)]], -1, "Q")
        assert a.direct_sum(b).coefficients == "Q"
        with pytest.raises(ValueError):
            a.direct_sum(SeifertForm([[1, 1], [0, 1]], 1, "Q"))


class TestAutometricForm:
    def test_isometry_enforced(self):
        with pytest.raises(ValueError):
            AutometricForm([[1, 0], [0, 1]], [[2, 0], [0, 1]], 1)

    def test_symmetry_enforced(self):
        with pytest.raises(ValueError):
            AutometricForm([[1, 1], [0, 1]], [[1, 0], [0, 1]], 1)

    def test_singular_theta(self):
        with pytest.raises(SingularAutometricForm):
            AutometricForm([[0]], [[1]], 1)

    def test_sum_requires_matching_symmetry(self):
        a = AutometricForm([[1]], [[-1]], 1)
        b = AutometricForm([[0, 1], [-1, 0]], [[1, 1], [0, 1]], -1)
        with pytest.raises(ValueError):
            a.direct_sum(b)


class TestSeifertSubmodule:
    def test_dependent_columns_rejected(self):
        with pytest.raises(ValueError):
            SeifertSubmodule([[1, 2], [1, 2]])


# ---------------------------------------------------------------------------
# covering functors
# ---------------------------------------------------------------------------

class TestCoveringSeifert:
    def test_trefoil_covering(self):
        cov = covering_seifert(SeifertForm(TREFOIL, -1, "Z"))
        assert cov.epsilon == 1
        assert [d.ordinary()[0] for d in cov.module.divisors] == [
            [Fraction(1), Fraction(-1), Fraction(1)]]
        assert cov.module.torsion_mode == "P"

    def test_trefoil_multisignature(self):
        cov = covering_seifert(SeifertForm(TREFOIL, -1, "Z"))
        ms = dw_multisignature_laurent(cov)
        entries = ms.entries()
        assert len(entries) == 1
        (key, ridx, level), value = entries[0]
        assert level == 1
        assert value == -2
        lo, hi = ms.theta(key, ridx).theta_interval()
        assert lo < 1.0471975511965976 < hi  # pi/3

    def test_figure_eight_covering(self):
        cov = covering_seifert(SeifertForm(FIG8, -1, "Z"))
        assert [d.ordinary()[0] for d in cov.module.divisors] == [
            [Fraction(1), Fraction(-3), Fraction(1)]]
        assert dw_multisignature_laurent(cov).all_zero

    def test_idempotent_e_gives_zero_module(self):
        # psi = [[0,1],[0,0]] with eps = -1 has e idempotent
        f = SeifertForm([[0, 1], [0, 0]], -1, "Z")
        ident = Matrix.identity(2)
        assert f.e * (ident - f.e) == Matrix.zeros(2, 2)
        assert covering_seifert(f).module.is_zero

    def test_rank_zero(self):
        f = SeifertForm([], -1, "Z")
        assert covering_seifert(f).module.is_zero

    def test_symmetry_flip(self):
        sym = SeifertForm([[1, 1], [0, 1]], 1, "Q")
        assert covering_seifert(sym).epsilon == -1
        skew = SeifertForm(TREFOIL, -1, "Z")
        assert covering_seifert(skew).epsilon == 1

    def test_kernel_iff_near_projection(self):
        rng = random.Random(3)
        hits = {True: 0, False: 0}
        for _ in range(30):
            n = rng.randint(1, 3)
            eps = rng.choice([1, -1])
            psi = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
            try:
                f = SeifertForm(psi, eps, "Q")
            except SingularSeifertForm:
                continue
            ident = Matrix.identity(n)
            prod = f.e * (ident - f.e)
            power = ident
            for _ in range(n):
                power = power * prod
            nilpotent = power == Matrix.zeros(n, n)
            assert covering_seifert(f).module.is_zero == nilpotent
            hits[nilpotent] += 1
        assert hits[True] and hits[False]


class TestCoveringAutometric:
    def test_rank_one_anchor(self):
        cov = covering_autometric(AutometricForm([[1]], [[-1]], 1))
        assert [d.ordinary()[0] for d in cov.module.divisors] == [
            [Fraction(1), Fraction(1)]]
        assert cov.module.torsion_mode == "Q"
        assert cov.epsilon == -1
        # sign pinned by the round-trip law; the mirror-slot convention
        # would produce the negative class
        expected = RatFunc.make(
            LaurentPoly({0: Fraction(-1)}), [Fraction(1), Fraction(1)])
        assert cov.pairing[0, 0].class_equals(expected)

    def test_identity_monodromy_is_q_torsion_only(self):
        cov = covering_autometric(AutometricForm([[1]], [[1]], 1))
        assert [d.ordinary()[0] for d in cov.module.divisors] == [
            [Fraction(-1), Fraction(1)]]
        pres = Matrix([[LaurentPoly({0: Fraction(-1), 1: Fraction(1)})]])
        with pytest.raises(NotPTorsion):
            decompose_module(pres, "P")

    def test_block_sums_to_direct_sums(self):
        rng = random.Random(11)
        for _ in range(4):
            eps = rng.choice([1, -1])
            f1 = random_autometric(rng, eps, max_rank=2, bound=3)
            f2 = random_autometric(rng, eps, max_rank=2, bound=3)
            c1, c2 = covering_autometric(f1), covering_autometric(f2)
            cs = covering_autometric(f1.direct_sum(f2))
            merged = elementary_divisor_counts(c1.module)
            for key, cnt in elementary_divisor_counts(c2.module).items():
                merged[key] = merged.get(key, 0) + cnt
            assert elementary_divisor_counts(cs.module) == merged
            assert dw_multisignature_laurent(cs) == \
                dw_multisignature_laurent(c1.direct_sum(c2))


class TestCoveringSeifertFunctoriality:
    def test_block_sums_to_direct_sums(self):
        rng = random.Random(17)
        done = 0
        while done < 4:
            eps = rng.choice([1, -1])
            psi1 = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
            psi2 = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
            try:
                f1 = SeifertForm(psi1, eps, "Q")
                f2 = SeifertForm(psi2, eps, "Q")
            except SingularSeifertForm:
                continue
            c1, c2 = covering_seifert(f1), covering_seifert(f2)
            cs = covering_seifert(f1.direct_sum(f2))
            merged = elementary_divisor_counts(c1.module)
            for key, cnt in elementary_divisor_counts(c2.module).items():
                merged[key] = merged.get(key, 0) + cnt
            assert elementary_divisor_counts(cs.module) == merged
            assert dw_multisignature_laurent(cs) == \
                dw_multisignature_laurent(c1.direct_sum(c2))
            done += 1


# ---------------------------------------------------------------------------
# monodromy and the round trip
# ---------------------------------------------------------------------------

class TestMonodromy:
    def test_rank_one_recovery(self):
        f = AutometricForm([[1]], [[-1]], 1)
        mono = monodromy(covering_autometric(f))
        assert mono.h == frac_matrix([[-1]])
        assert mono.theta == frac_matrix([[1]])
        assert mono.epsilon == 1

    def test_companion_charpoly(self):
        # module Q[z,z^-1]/((z-2)(z-1/2)) with the symmetric pairing z/d
        d = LaurentPoly.from_dense([Fraction(1), Fraction(-5, 2), Fraction(1)])
        module = decompose_module(Matrix([[d]]), "Q")
        pairing = [[RatFunc.make(LaurentPoly.z(), d.ordinary()[0])]]
        form = LaurentLinkingForm(module, pairing, 1)
        mono = monodromy(form)
        assert mono.h.charpoly() == [Fraction(1), Fraction(-5, 2), Fraction(1)]
        assert mono.epsilon == -1

    def test_direct_sum_gives_block_sum(self):
        rng = random.Random(5)
        eps = 1
        f1 = random_autometric(rng, eps, max_rank=2, bound=3)
        f2 = random_autometric(rng, eps, max_rank=2, bound=3)
        fs = f1.direct_sum(f2)
        mono = monodromy(covering_autometric(fs))
        want = [Fraction(1)]
        for part in (f1, f2):
            cp = part.h.charpoly()
            prod = [Fraction(0)] * (len(want) + len(cp) - 1)
            for i, a in enumerate(want):
                for j, b in enumerate(cp):
                    prod[i + j] += a * b
            want = prod
        got = mono.h.charpoly()
        # normalize leading coefficients before comparing
        assert [c / got[-1] for c in got] == [c / want[-1] for c in want]


class TestRoundTrip:
    def test_rank_one_anchor(self):
        assert verify_roundtrip(AutometricForm([[1]], [[-1]], 1))

    def test_symmetric_and_skew_examples(self):
        theta = [[1, 0], [0, -2]]
        h = [[3, 4], [2, 3]]
        assert verify_roundtrip(AutometricForm(theta, h, 1))
        assert verify_roundtrip(AutometricForm([[0, 1], [-1, 0]],
                                               [[1, 1], [0, 1]], -1))

    def test_random_forms(self):
        rng = random.Random(20260815)
        for _ in range(40):
            assert verify_roundtrip(random_autometric(rng))

    def test_corrupted_pairing_detected(self):
        f = AutometricForm([[1]], [[-1]], 1)
        cov = covering_autometric(f)
        bad_pairing = [[-cov.pairing[0, 0]]]
        bad = LaurentLinkingForm(cov.module, bad_pairing, cov.epsilon)
        mono = monodromy(bad)
        p = canonical_identification(f, bad)
        assert mono.theta != p.transpose() * f.theta * p


# ---------------------------------------------------------------------------
# lagrangians and hyperbolicity witnesses
# ---------------------------------------------------------------------------

class TestSeifertLagrangians:
    def test_trefoil_witness_pair(self):
        f = SeifertForm(TREFOIL, -1, "Z")
        fsum = f.direct_sum(f.negate())
        diag, twist = hyperbolic_witness_sum(f)
        assert verify_seifert_lagrangian(fsum, diag) == "split_lagrangian"
        assert verify_seifert_lagrangian(fsum, twist) == "split_lagrangian"
        assert is_complementary(fsum, diag, twist)

    def test_doubled_diagonal_is_not_split(self):
        f = SeifertForm(TREFOIL, -1, "Z")
        fsum = f.direct_sum(f.negate())
        diag, _ = hyperbolic_witness_sum(f)
        doubled = SeifertSubmodule(diag.basis.map(lambda x: 2 * x))
        assert verify_seifert_lagrangian(fsum, doubled) == "lagrangian"

    def test_non_isotropic_detected(self):
        f = SeifertForm([[0, 1], [1, 0]], 1, "Q")  # e is scalar 1/2
        good = verify_seifert_lagrangian(f, SeifertSubmodule([[1], [0]]))
        bad = verify_seifert_lagrangian(f, SeifertSubmodule([[1], [1]]))
        assert good == "split_lagrangian"
        assert bad == "not_lagrangian"

    def test_full_space_is_not_half_rank(self):
        f = SeifertForm(TREFOIL, -1, "Z")
        full = SeifertSubmodule([[1, 0], [0, 1]])
        assert verify_seifert_lagrangian(f, full) == "not_lagrangian"

    def test_e_invariance_precondition(self):
        f = SeifertForm(TREFOIL, -1, "Z")
        with pytest.raises(NotEInvariant):
            verify_seifert_lagrangian(f, SeifertSubmodule([[1], [0]]))

    def test_rank_zero_witnesses(self):
        f = SeifertForm([], -1, "Z")
        diag, twist = hyperbolic_witness_sum(f)
        assert diag.basis.ncols == 0
        assert is_complementary(f.direct_sum(f.negate()), diag, twist)

    def test_overlapping_submodules_not_complementary(self):
        f = SeifertForm(TREFOIL, -1, "Z")
        fsum = f.direct_sum(f.negate())
        diag, _ = hyperbolic_witness_sum(f)
        assert not is_complementary(fsum, diag, diag)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(-3, 3), min_size=4, max_size=4),
           st.sampled_from([1, -1]))
    def test_witness_law(self, entries, eps):
        psi = [entries[:2], entries[2:]]
        try:
            f = SeifertForm(psi, eps, "Q")
        except SingularSeifertForm:
            assume(False)
        fsum = f.direct_sum(f.negate())
        diag, twist = hyperbolic_witness_sum(f)
        assert verify_seifert_lagrangian(fsum, diag) == "split_lagrangian"
        assert verify_seifert_lagrangian(fsum, twist) == "split_lagrangian"
        assert is_complementary(fsum, diag, twist)


class TestLagrangianTransport:
    def test_witness_images_are_covering_lagrangians(self):
        f = SeifertForm(TREFOIL, -1, "Z")
        fsum = f.direct_sum(f.negate())
        cov = covering_seifert(fsum)
        assert dw_multisignature_laurent(cov).all_zero
        for sub in hyperbolic_witness_sum(f):
            image = covering_submodule_image(cov, sub)
            assert is_lagrangian_submodule(cov, image)

    def test_transport_on_random_sums(self):
        rng = random.Random(29)
        done = 0
        while done < 3:
            n = rng.randint(1, 2)
            eps = rng.choice([1, -1])
            psi = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
            try:
                f = SeifertForm(psi, eps, "Q")
            except SingularSeifertForm:
                continue
            fsum = f.direct_sum(f.negate())
            cov = covering_seifert(fsum)
            if cov.module.is_zero:
                continue
            for sub in hyperbolic_witness_sum(f):
                image = covering_submodule_image(cov, sub)
                assert is_lagrangian_submodule(cov, image)
            done += 1


# ---------------------------------------------------------------------------
# near projections
# ---------------------------------------------------------------------------

class TestNearProjection:
    def test_zero_and_identity(self):
        plus, minus = near_projection_decompose(2, [[0, 0], [0, 0]])
        assert plus.ncols == 0 and minus.ncols == 2
        plus, minus = near_projection_decompose(2, [[1, 0], [0, 1]])
        assert plus.ncols == 2 and minus.ncols == 0

    def test_idempotent_splits_image_and_kernel(self):
        e = frac_matrix([[1, 1], [0, 0]])
        plus, minus = near_projection_decompose(2, e.rows)
        assert plus.ncols == 1 and minus.ncols == 1
        ident = Matrix.identity(2)
        assert (ident - e) * plus == Matrix.zeros(2, 1)
        assert e * minus == Matrix.zeros(2, 1)

    def test_nilpotent_restrictions(self):
        # genuinely near (not exactly) a projection
        e = frac_matrix([[1, 0, 1], [0, 0, 1], [0, 0, 0]])
        plus, minus = near_projection_decompose(3, e.rows)
        assert plus.ncols + minus.ncols == 3
        ident = Matrix.identity(3)
        top = (ident - e) * (ident - e) * (ident - e) * plus
        bot = e * e * e * minus
        assert top == Matrix.zeros(3, plus.ncols)
        assert bot == Matrix.zeros(3, minus.ncols)

    def test_not_near_projection(self):
        f = SeifertForm(TREFOIL, -1, "Z")
        with pytest.raises(NotNearProjection):
            near_projection_decompose(2, f.e.rows)
