"""
adsharvest Oracle Tests
Flat-space closed forms, the perturbative series and the brute-force oracle
"""

import math
import pytest


class TestFlatClosedForms:
    """Tests for the flat-space reference values"""

    def test_transition_probability_values(self):
        from oracles import flat_transition_probability

        assert flat_transition_probability(0.0) == pytest.approx(math.sqrt(math.pi) / 4, abs=1e-12)
        assert flat_transition_probability(1.0) == pytest.approx(0.0697010049, rel=1e-9)

    def test_transition_probability_decreases_with_gap(self):
        from oracles import flat_transition_probability

        values = [flat_transition_probability(g) for g in (-1.0, 0.0, 1.0, 3.0)]
        assert values == sorted(values, reverse=True)
        assert flat_transition_probability(30.0) == 0.0

    def test_matrix_element_against_scipy(self):
        from scipy import special
        from oracles import FlatPairConfig, flat_matrix_element_x

        d, gap = 2.0, 0.7
        q = d * d / 8
        expected = -(math.exp(-q - gap * gap) / (4 * math.sqrt(math.pi))) * complex(
            math.pi * special.i0(q), -special.k0(q))
        assert abs(flat_matrix_element_x(FlatPairConfig(gap, d)) - expected) <= 1e-13 * abs(expected)

    def test_matrix_element_far_apart(self):
        """The exponentially scaled Bessel forms stay finite at large d"""
        from oracles import FlatPairConfig, flat_matrix_element_x

        x = flat_matrix_element_x(FlatPairConfig(0.0, 200.0))
        assert math.isfinite(x.real) and math.isfinite(x.imag)
        assert abs(x) < 1e-2

    def test_zero_separation_rejected(self):
        from oracles import FlatPairConfig
        from common.errors import InvalidParameter

        with pytest.raises(InvalidParameter):
            FlatPairConfig(1.0, 0.0)

    def test_flat_concurrence_vanishes_far_apart(self):
        from oracles import flat_concurrence

        assert flat_concurrence(1.0, 0.1) > 0
        assert flat_concurrence(1.0, 50.0) == 0.0


class TestPerturbativeSeries:
    """Tests for the small sigma/ell expansion"""

    def test_order_zero_is_flat(self):
        from oracles import perturbative_transition_probability, flat_transition_probability

        assert perturbative_transition_probability(0.4, 15.0, order=0) == flat_transition_probability(0.4)

    def test_no_first_order_correction_when_transparent(self):
        from oracles import perturbative_coefficients

        assert perturbative_coefficients(0.8, "transparent")[1] == 0.0
        assert perturbative_coefficients(0.8, "dirichlet")[1] < 0

    def test_zeta_linearity(self):
        from oracles import perturbative_transition_probability as series

        p = {z: series(1.0, 12.0, z, 0.3) for z in (-1, 0, 1)}
        assert p[1] + p[-1] == pytest.approx(2 * p[0], rel=1e-14)

    def test_preconditions(self):
        from oracles import perturbative_transition_probability
        from common.errors import InvalidParameter

        with pytest.raises(InvalidParameter):
            perturbative_transition_probability(1.0, 20.0, order=5)
        with pytest.raises(InvalidParameter):
            perturbative_transition_probability(1.0, 5.0)
        with pytest.raises(InvalidParameter):
            perturbative_transition_probability(1.0, 20.0, d_origin=-1.0)


class TestWightman:
    """Tests for the regulated two-point function"""

    def test_flat_spacelike_value(self):
        from oracles import SpacetimePoint, WightmanEvaluator, wightman

        w = wightman(SpacetimePoint(0.0, 3.0), SpacetimePoint(0.0, 1.0), WightmanEvaluator.flat(1e-9))
        assert w.real == pytest.approx(1.0 / (4 * math.pi * 2.0), rel=1e-12)
        assert abs(w.imag) < 1e-12

    def test_short_distance_growth(self):
        """At coincidence the 2+1 dimensional W grows like 1/eps"""
        from oracles import SpacetimePoint, WightmanEvaluator, wightman

        x = SpacetimePoint(0.0, 0.5)
        ev = WightmanEvaluator(1.0, "transparent", 1e-3)
        ratio = abs(wightman(x, x, ev.with_epsilon(5e-4))) / abs(wightman(x, x, ev))
        assert ratio == pytest.approx(2.0, rel=1e-3)

    def test_spacelike_imaginary_part_vanishes(self):
        from oracles import SpacetimePoint, WightmanEvaluator, wightman

        a, b = SpacetimePoint(0.0, 0.0), SpacetimePoint(0.1, 2.0)
        w = wightman(a, b, WightmanEvaluator(1.0, "dirichlet", 1e-8))
        assert abs(w.imag) < 1e-7 * abs(w.real)

    def test_transparent_is_first_term(self):
        """zeta = 0 keeps 1/sqrt(sigma) alone; zeta enters linearly"""
        from oracles import SpacetimePoint, WightmanEvaluator, wightman

        a, b = SpacetimePoint(0.3, 0.2), SpacetimePoint(0.0, 1.1, 0.4)
        w = {z: wightman(a, b, WightmanEvaluator(0.8, z, 1e-3)) for z in (-1, 0, 1)}
        assert abs(w[1] + w[-1] - 2 * w[0]) <= 1e-14 * abs(w[0])
        assert w[1] != w[0]

    def test_large_ell_matches_flat(self):
        from oracles import SpacetimePoint, WightmanEvaluator, wightman

        a, b = SpacetimePoint(0.4, 0.0), SpacetimePoint(0.0, 1.0)
        ads = wightman(a, b, WightmanEvaluator(1e4, "transparent", 1e-3))
        flat = wightman(a, b, WightmanEvaluator.flat(1e-3))
        assert abs(ads - flat) <= 1e-6 * abs(flat)

    def test_conjugate_symmetry(self):
        """W(x, x') = conj W(x', x)"""
        from oracles import SpacetimePoint, WightmanEvaluator, wightman

        a, b = SpacetimePoint(5.0, 0.3), SpacetimePoint(0.0, 1.2)
        ev = WightmanEvaluator(1.0, "neumann", 1e-3)
        assert wightman(a, b, ev) == pytest.approx(wightman(b, a, ev).conjugate(), rel=1e-12)

    def test_evaluator_validation(self):
        from oracles import WightmanEvaluator
        from common.errors import InvalidParameter

        with pytest.raises(InvalidParameter):
            WightmanEvaluator(1.0, "transparent", 0.0)
        with pytest.raises(InvalidParameter):
            WightmanEvaluator(None, "transparent", 1e-3, "ads")
        with pytest.raises(InvalidParameter):
            WightmanEvaluator(1.0, "transparent", 1e-3, "de-sitter")


class TestExtrapolation:
    """Tests for the eps -> 0 fit"""

    def test_exact_polynomial(self):
        from oracles import extrapolate

        eps = [10 ** -2.5, 1e-3, 10 ** -3.5, 1e-4]
        values = [1.5 + 2j + 3.0 * e - 7.0 * e * e for e in eps]
        result = extrapolate(eps, values, [0.0] * 4)
        assert abs(result.value - (1.5 + 2j)) < 1e-12
        assert result.fit_residual < 1e-12

    def test_diverging_sequence_is_unstable(self):
        from oracles import extrapolate
        from common.errors import ExtrapolationUnstable

        eps = [1e-2, 1e-3, 1e-4, 1e-5]
        values = [1.0, 1.001, 1.1, 2.0]
        with pytest.raises(ExtrapolationUnstable):
            extrapolate(eps, values, [0.0] * 4)

    def test_grid_validation(self):
        from oracles import BruteGrid
        from common.errors import InvalidParameter

        with pytest.raises(InvalidParameter):
            BruteGrid(epsilons=(1e-4, 1e-3, 1e-2, 1e-1))
        with pytest.raises(InvalidParameter):
            BruteGrid(epsilons=(1e-2, 1e-3))

    def test_trajectory_kinds(self):
        from oracles import Trajectory
        from common.errors import InvalidParameter

        assert Trajectory("static", 2.0, 1.0).gamma == pytest.approx(math.sqrt(5.0))
        circular = Trajectory("circular", 2.0, 1.0)
        assert circular.gamma == 1.0
        assert circular.point(math.pi).phi == pytest.approx(math.pi)
        with pytest.raises(InvalidParameter):
            Trajectory("circular", 2.0)


@pytest.mark.slow
class TestBruteForceAgreement:
    """The brute-force oracle against closed forms and the branch-cut evaluators"""

    @pytest.mark.parametrize("gap", [0.0, 0.5, 1.0])
    def test_flat_transition_probability(self, gap):
        from oracles import Trajectory, WightmanEvaluator, transition_probability, flat_transition_probability

        result = transition_probability(Trajectory("static", 0.0), gap, WightmanEvaluator.flat())
        assert result.value == pytest.approx(flat_transition_probability(gap), rel=1e-6)

    def test_flat_matrix_element(self):
        from oracles import (BrutePair, WightmanEvaluator, FlatPairConfig,
                             matrix_element_x, flat_matrix_element_x)

        result = matrix_element_x(BrutePair.flat(0.0, 1.0), WightmanEvaluator.flat())
        expected = flat_matrix_element_x(FlatPairConfig(0.0, 1.0))
        assert abs(result.value - expected) <= 1e-5 * abs(expected)

    @pytest.mark.parametrize("ell", [0.5, 1.0, 5.0])
    @pytest.mark.parametrize("gap", [0.01, 1.0, 2.0])
    @pytest.mark.parametrize("zeta", [-1, 0, 1])
    def test_static_transition_probability(self, ell, gap, zeta):
        from detectors import StaticDetector, transition_probability_static
        from oracles import Trajectory, WightmanEvaluator, transition_probability

        for d_origin in (0.0, 1.0):
            det = StaticDetector.at_proper_distance(gap, ell, d_origin)
            core = transition_probability_static(det, ell, zeta)
            oracle = transition_probability(Trajectory("static", det.position.radius(ell), ell), gap,
                                            WightmanEvaluator(ell, zeta))
            assert core == pytest.approx(oracle.value, rel=1e-6)

    @pytest.mark.parametrize("d", [0.5, 1.0])
    @pytest.mark.parametrize("t0", [0.0, 1.0])
    @pytest.mark.parametrize("ell", [0.5, 1.0, 5.0])
    @pytest.mark.parametrize("zeta", [-1, 0, 1])
    def test_static_matrix_element(self, d, t0, ell, zeta):
        from detectors import StaticPair, matrix_element_x_static
        from oracles import BrutePair, matrix_element_x, evaluator_for

        pair = StaticPair.from_distances(1.0, ell, 0.0, d, zeta, t0)
        core = matrix_element_x_static(pair)
        oracle = matrix_element_x(BrutePair.from_config(pair), evaluator_for(pair))
        assert abs(core - oracle.value) <= 1e-5 * abs(oracle.value)

    @pytest.mark.parametrize("ell", [0.5, 1.0, 5.0])
    @pytest.mark.parametrize("gap", [0.01, 1.0, 2.0])
    def test_circular_transition_probability(self, ell, gap):
        """Any orbit radius gives the origin value; checked on an orbit away from it"""
        from detectors import transition_probability_circular
        from oracles import Trajectory, WightmanEvaluator, transition_probability

        for zeta in (-1, 0, 1):
            core = transition_probability_circular(gap, ell, zeta)
            oracle = transition_probability(Trajectory("circular", 0.7 * ell, ell), gap,
                                            WightmanEvaluator(ell, zeta))
            assert core == pytest.approx(oracle.value, rel=1e-6)

    def test_sin_pole_pv_from_brute_force(self):
        """ell = 2, gap = 1/2 at the origin puts the vacuum PV at a = 1, beta = 1"""
        from detectors.kernels import sin_pole_pv, sin_pole_comb
        from detectors.static import INV_4_SQRT_PI
        from oracles import Trajectory, WightmanEvaluator, transition_probability

        oracle = transition_probability(Trajectory("static", 0.0, 2.0), 0.5, WightmanEvaluator(2.0, "transparent"))
        pv_from_oracle = sin_pole_comb(1.0, 1.0, 1e-15) - oracle.value / INV_4_SQRT_PI
        assert sin_pole_pv(1.0, 1.0).value == pytest.approx(pv_from_oracle, rel=1e-5)

    def test_circular_matrix_element(self):
        from detectors import CircularPair, matrix_element_x_circular
        from oracles import BrutePair, matrix_element_x, evaluator_for

        pair = CircularPair.from_distances(1.0, 1.0, 0.5, 1.0, "neumann", 1.0)
        core = matrix_element_x_circular(pair)
        oracle = matrix_element_x(BrutePair.from_config(pair), evaluator_for(pair))
        assert abs(core - oracle.value) <= 1e-5 * abs(oracle.value)

    def test_static_time_reversal(self):
        from detectors import StaticPair
        from oracles import BrutePair, matrix_element_x, evaluator_for

        forward = StaticPair.from_distances(1.5, 1.0, 0.0, 1.0, "dirichlet", 1.0)
        backward = StaticPair.from_distances(-1.5, 1.0, 0.0, 1.0, "dirichlet", -1.0)
        x_f = matrix_element_x(BrutePair.from_config(forward), evaluator_for(forward))
        x_b = matrix_element_x(BrutePair.from_config(backward), evaluator_for(backward))
        assert abs(x_f.value - x_b.value) <= 2 * (x_f.error + x_b.error) + 1e-10

    def test_c_is_hermitian(self):
        from oracles import BrutePair, WightmanEvaluator, matrix_element_c

        pair = BrutePair.flat(0.5, 1.5, 0.5)
        forward = matrix_element_c(pair, WightmanEvaluator.flat())
        swapped = matrix_element_c(pair, WightmanEvaluator.flat(), swap=True)
        assert abs(forward.value - swapped.value.conjugate()) <= 1e-8

    def test_c_clusters(self):
        from oracles import BrutePair, WightmanEvaluator, matrix_element_c

        near = matrix_element_c(BrutePair.flat(0.5, 1.0), WightmanEvaluator.flat())
        far = matrix_element_c(BrutePair.flat(0.5, 30.0), WightmanEvaluator.flat())
        assert abs(far.value) < 0.1 * abs(near.value)

    def test_c_tends_to_transition_probability(self):
        """As the detectors merge C approaches P_D; at zero gap C = (sqrt(pi)/4) e^{-q} I0(q), q = d^2/8"""
        from oracles import BrutePair, WightmanEvaluator, matrix_element_c, flat_transition_probability
        from numerics import bessel_i0e

        p = flat_transition_probability(0.0)
        distances = []
        for d in (0.5, 0.25, 0.1):
            c = matrix_element_c(BrutePair.flat(0.0, d), WightmanEvaluator.flat()).value
            q = 0.125 * d * d
            assert c.real == pytest.approx(p * bessel_i0e(q), rel=1e-4)
            distances.append(abs(c - p))
        assert all(a > b for a, b in zip(distances, distances[1:]))
        assert distances[-1] < 1e-2 * p

    def test_smaller_regulator_is_consistent(self):
        """Halving the smallest eps moves the limit by less than 10 fit residuals"""
        from oracles import Trajectory, WightmanEvaluator, BruteGrid, transition_probability

        trajectory = Trajectory("static", 0.0, 1.0)
        ev = WightmanEvaluator(1.0, "transparent")
        base = transition_probability(trajectory, 1.0, ev)
        finer = transition_probability(trajectory, 1.0, ev,
                                       BruteGrid(epsilons=(10 ** -2.5, 1e-3, 10 ** -3.5, 1e-4, 5e-5)))
        assert abs(finer.value - base.value) <= 10 * max(base.fit_residual, 1e-12) + 1e-9


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
