import math

import numpy as np
import pytest
from scipy.special import zeta

from levycrit import (
    DomainError,
    LevyTriplet,
    Normalization,
    PowerPiece,
    as_finite_measure,
    char_exponent,
    make_lattice_table,
    make_multi_index_lattice,
    make_piecewise_power,
    make_power_law_lattice,
    make_stable_triplet,
    make_walk_triplet,
    moment,
)
from levycrit.measures import check_probability, total_mass_interval

ZETA_15 = 2.612375348685488  # zeta(3/2)


class TestPowerLawLattice:
    def test_raw_masses(self):
        law = make_power_law_lattice(0.5)
        assert law.mass(2) == pytest.approx(2 ** -1.5)
        law1 = make_power_law_lattice(1.0)
        assert law1.mass(1) == 1.0
        assert law1.mass(4) == 0.0625

    def test_normalized_sums_to_one(self):
        law = make_power_law_lattice(0.5, normalize=True)
        # oracle: partial sum to 1e7 plus integral tail bracket
        n = np.arange(1, 10 ** 7 + 1)
        partial = 2 * law.mass(1) * float(np.sum(n ** -1.5))
        lo_tail = 2 * law.mass(1) * (10 ** 7 + 1) ** -0.5 / 0.5
        assert partial + lo_tail == pytest.approx(1.0, abs=1e-7)
        assert check_probability(law) == pytest.approx(1.0, abs=1e-10)
        assert law.mass(1) == pytest.approx(1.0 / (2.0 * ZETA_15))

    def test_rejects_bad_alpha(self):
        with pytest.raises(DomainError):
            make_power_law_lattice(0.0)
        with pytest.raises(DomainError):
            make_power_law_lattice(-1.0)


class TestMultiIndex:
    def test_interleaved_masses(self, multi_default):
        assert multi_default.mass(2) == pytest.approx(2 ** -1.5)
        assert multi_default.mass(3) == pytest.approx(3 ** -2.5)

    def test_collapses_to_power_law(self):
        mi = make_multi_index_lattice(1.0, 1.0)
        pw = make_power_law_lattice(1.0)
        n = np.arange(1, 100)
        assert np.allclose(mi.mass(n), pw.mass(n), rtol=0, atol=0)

    def test_dominant_tail_exponent(self, multi_default):
        assert multi_default.tail.exponent == pytest.approx(1.5)


class TestStableTriplet:
    def test_brownian_case(self):
        t = make_stable_triplet(2.0, 1.0)
        assert t.c == 2.0
        assert t.nu is None
        assert char_exponent(t, 3.0) == pytest.approx(9.0)

    def test_cauchy_density_constant(self):
        # density * |y|^2 -> 1/pi for alpha = 1, gamma = 1
        t = make_stable_triplet(1.0, 1.0)
        assert t.nu.density(100.0) * 1e4 == pytest.approx(1.0 / math.pi, rel=1e-2)

    def test_density_symmetry(self):
        t = make_stable_triplet(0.5, 1.0)
        assert t.nu.density(-3.0) == t.nu.density(3.0)

    def test_rejects_out_of_range(self):
        with pytest.raises(DomainError):
            make_stable_triplet(2.5, 1.0)
        with pytest.raises(DomainError):
            make_stable_triplet(1.0, 0.0)


class TestCharExponent:
    def test_zero_at_origin(self, stable_half, multi_default):
        assert char_exponent(stable_half, 0.0) == 0.0
        assert char_exponent(make_walk_triplet(multi_default), 0.0) == 0.0

    def test_single_atom_lattice(self):
        law = make_lattice_table({1: 1.0})
        t = make_walk_triplet(as_finite_measure(law))
        assert char_exponent(t, math.pi) == pytest.approx(4.0, rel=1e-12)

    def test_even_and_nonnegative(self, stable_half, multi_default):
        rng = np.random.default_rng(1234)
        triplets = (
            stable_half,
            make_stable_triplet(2.0, 1.0),
            make_walk_triplet(make_power_law_lattice(1.0)),
            make_walk_triplet(multi_default),
        )
        for triplet in triplets:
            for xi in rng.uniform(-50, 50, size=1000):
                psi = char_exponent(triplet, xi)
                assert psi >= 0.0
                assert psi == char_exponent(triplet, -xi)

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5, 1.9])
    def test_stable_scaling(self, alpha):
        t = make_stable_triplet(alpha, 1.0)
        for xi in (0.1, 1.0, 10.0):
            ratio = char_exponent(t, 2 * xi) / char_exponent(t, xi)
            assert ratio == pytest.approx(2 ** alpha, abs=1e-6)

    def test_hook_and_sum_paths_agree_at_switchover(self, power_half_raw, multi_default):
        # the exact cosine transform serves |xi| <= 0.05, the truncated sum
        # with tail correction serves the rest; both must agree at the seam
        for law in (power_half_raw, multi_default):
            t = make_walk_triplet(law)
            hook = char_exponent(t, 0.0499999)
            summed = char_exponent(t, 0.0500001)
            assert summed == pytest.approx(hook, rel=1e-5)

    def test_lattice_small_xi_matches_series_oracle(self, power_half_raw):
        # oracle: direct summation to 1e7 plus tail average of (1 - cos)
        t = make_walk_triplet(power_half_raw)
        xi = 1e-3
        n = np.arange(1, 10 ** 7 + 1)
        partial = 2.0 * float(np.sum(n ** -1.5 * (1 - np.cos(n * xi))))
        tail_mid = 2.0 * float(zeta(1.5, 10 ** 7 + 1))
        psi = char_exponent(t, xi)
        assert partial <= psi <= partial + 2 * tail_mid
        assert psi == pytest.approx(partial + tail_mid, rel=1e-4)


class TestMoment:
    def test_heavy_tail_diverges(self, stable_half):
        assert moment(stable_half.nu, 2).status.value == "diverges"

    def test_tail_mass_converges(self, stable_half):
        assert moment(stable_half.nu, 0).status.value == "converges"

    def test_lattice_second_moment_value(self):
        law = make_power_law_lattice(2.5)
        v = moment(law, 2, cutoff=10 ** 6)
        # oracle: 2 * (zeta(3/2) - 1), the exact two-sided sum over |n| >= 2
        assert v.status.value == "converges"
        assert v.estimate == pytest.approx(2 * (ZETA_15 - 1.0), abs=1e-6)
        lo, hi = v.value_interval
        assert lo <= 2 * (ZETA_15 - 1.0) <= hi

    def test_bad_order_rejected(self, stable_half):
        with pytest.raises(DomainError):
            moment(stable_half.nu, 4)


class TestPiecewisePower:
    def test_probability_detection(self, flat_core_heavy):
        assert flat_core_heavy.normalization is Normalization.PROBABILITY
        assert flat_core_heavy.total_mass == pytest.approx(1.0)

    def test_density_evaluation(self, flat_core_heavy):
        assert flat_core_heavy.density(0.5) == pytest.approx(1 / 6)
        assert flat_core_heavy.density(4.0) == pytest.approx((1 / 6) * 4.0 ** -1.5)

    def test_sigma_finite_needs_levy_integrability(self):
        with pytest.raises(DomainError):
            make_piecewise_power([PowerPiece(0.0, math.inf, ((1.0, 3.5),))])
        with pytest.raises(DomainError):  # infinite mass at infinity
            make_piecewise_power([PowerPiece(0.0, math.inf, ((1.0, 0.5),))])

    def test_pieces_must_tile(self):
        with pytest.raises(DomainError):
            make_piecewise_power(
                [PowerPiece(0.0, 1.0, ((1.0, 0.0),)), PowerPiece(2.0, 3.0, ((1.0, 0.0),))]
            )


class TestLawAndTripletValidation:
    def test_unimodal_lattice_forbidden(self):
        with pytest.raises(DomainError):
            make_power_law_lattice(0.5).__class__(
                support=make_power_law_lattice(0.5).support,
                normalization=Normalization.FINITE,
                tail=make_power_law_lattice(0.5).tail,
                total_mass=2 * ZETA_15,
                unimodal=True,
            )

    def test_triplet_rejects_probability_law(self, power_half_prob):
        with pytest.raises(DomainError):
            LevyTriplet(c=0.0, nu=power_half_prob)
        t = make_walk_triplet(power_half_prob)
        assert t.nu.normalization is Normalization.FINITE
        assert t.b == 0.0

    def test_negative_gaussian_coefficient(self):
        with pytest.raises(DomainError):
            LevyTriplet(c=-1.0, nu=None)

    def test_tail_mass_envelope(self, multi_default):
        lo, hi = multi_default.one_sided_tail_mass(10.0)
        cutoff = 3 * 10 ** 6
        n = np.arange(11, cutoff)
        brute = float(np.sum(multi_default.mass(n)))
        missing = 2.0 * cutoff ** -0.5  # integral bound on the un-summed tail
        assert brute <= hi
        assert lo <= brute + missing
        assert hi - lo < 1e-12  # exact components: envelope is a point

    def test_total_mass_interval_table(self):
        law = make_lattice_table({1: 0.25, 2: 0.25})
        lo, hi = total_mass_interval(law)
        assert lo == hi == pytest.approx(1.0)
        assert law.normalization is Normalization.PROBABILITY
