"""
adsharvest Harvesting Tests
Concurrence assembly, pair evaluation and the harvesting landmarks
"""

import math
import pytest


class TestConcurrence:
    """Tests for the concurrence formula"""

    def test_basic_values(self):
        from detectors import concurrence

        assert concurrence(0.25, 0.25, 0.5) == pytest.approx(0.5)
        assert concurrence(0.25, 0.25, 0.1j) == 0.0
        assert concurrence(0.0, 0.3, -0.2) == pytest.approx(0.4)

    def test_negative_probability_rejected(self):
        from detectors import concurrence
        from common.errors import InvalidParameter

        with pytest.raises(InvalidParameter):
            concurrence(-0.1, 0.2, 0.5)


class TestHarvestResult:
    """Tests for HarvestResult"""

    def test_clamp_flag(self):
        from detectors import HarvestResult

        clamped = HarvestResult(0.2, 0.2, 0.1 + 0.1j, err_p_a=1e-12, err_p_b=1e-12, err_x=1e-12)
        assert clamped.clamp_flag
        assert clamped.concurrence == 0.0
        assert clamped.err_concurrence == 0.0

        harvested = HarvestResult(0.01, 0.04, 0.5j, err_x=1e-12)
        assert not harvested.clamp_flag
        assert harvested.concurrence == pytest.approx(2 * (0.5 - 0.02))
        assert harvested.err_concurrence >= 2e-12

    def test_round_trip(self):
        from detectors import HarvestResult

        result = HarvestResult(0.1, 0.12, -0.3 + 0.05j, err_p_a=1e-11)
        data = result.to_dict()
        assert data["abs_x"] == pytest.approx(abs(-0.3 + 0.05j))
        assert "x" not in data
        restored = HarvestResult.from_dict(data)
        assert restored.x == result.x
        assert restored.concurrence == result.concurrence


class TestEvaluatePair:
    """Tests for evaluate_pair and compare_trajectories"""

    def test_static_pair(self):
        from detectors import StaticPair, evaluate_pair, transition_probability_static, matrix_element_x_static

        pair = StaticPair.from_distances(1.0, 2.0, 0.0, 1.0, "dirichlet")
        result = evaluate_pair(pair)
        assert result.p_a == pytest.approx(transition_probability_static(pair.detector_a, 2.0, "dirichlet"),
                                           rel=1e-12)
        assert result.x == pytest.approx(matrix_element_x_static(pair), rel=1e-12)
        assert result.p_b != result.p_a
        assert result.err_x >= 0

    def test_circular_pair_has_equal_probabilities(self):
        from detectors import CircularPair, evaluate_pair

        result = evaluate_pair(CircularPair.from_distances(1.0, 2.0, 0.5, 1.0))
        assert result.p_a == result.p_b

    def test_unknown_configuration(self):
        from detectors import evaluate_pair, build_pair
        from common.errors import InvalidParameter

        with pytest.raises(InvalidParameter):
            evaluate_pair("not a pair")
        with pytest.raises(InvalidParameter):
            build_pair("accelerated", 1.0, 1.0, 0.0, 1.0)

    def test_compare_at_origin(self):
        """With A at the origin both trajectories share P_A"""
        from detectors import compare_trajectories

        comparison = compare_trajectories(1.0, 1.0, 0.0, 1.0, "transparent")
        assert comparison.static.p_a == pytest.approx(comparison.circular.p_a, rel=1e-9)
        assert comparison.delta_concurrence == pytest.approx(
            comparison.circular.concurrence - comparison.static.concurrence)
        assert set(comparison.to_dict()) == {"static", "circular", "delta_concurrence"}


@pytest.mark.slow
class TestHarvestingLandmarks:
    """Qualitative features of harvesting in AdS3"""

    def test_separability_island(self):
        """Dirichlet, ell = 2.5, gap 3.6: harvesting stops and restarts as d grows"""
        from detectors import StaticPair, evaluate_pair

        grid = [3.0 + 0.1 * k for k in range(61)]
        results = [evaluate_pair(StaticPair.from_distances(3.6, 2.5, 0.0, d, "dirichlet")) for d in grid]
        harvested = [r.concurrence > 0 for r in results]
        assert harvested[0] and harvested[-1]
        zeros = [i for i, h in enumerate(harvested) if not h]
        assert zeros
        assert zeros == list(range(zeros[0], zeros[-1] + 1))

        abs_x = [r.abs_x for r in results]
        interior = min(range(1, len(grid) - 1), key=lambda i: abs_x[i])
        assert zeros[0] <= interior <= zeros[-1]

    def test_no_island_at_large_ell(self):
        from detectors import StaticPair, evaluate_pair

        results = [evaluate_pair(StaticPair.from_distances(3.6, 20.0, 0.0, 3.0 + 0.5 * k, "dirichlet"))
                   for k in range(13)]
        harvested = [r.concurrence > 0 for r in results]
        first_zero = harvested.index(False) if False in harvested else len(harvested)
        assert not any(harvested[first_zero:])

    def test_time_delay_asymmetry(self):
        """A static pair harvests more when the outer detector switches later"""
        from detectors import StaticPair, evaluate_pair

        late = evaluate_pair(StaticPair.from_distances(2.0, 1.0, 0.0, 2.5, "dirichlet", 2.0))
        early = evaluate_pair(StaticPair.from_distances(2.0, 1.0, 0.0, 2.5, "dirichlet", -2.0))
        assert late.concurrence > early.concurrence + late.err_concurrence + early.err_concurrence

    def test_circular_delay_symmetric(self):
        from detectors import CircularPair, evaluate_pair

        late = evaluate_pair(CircularPair.from_distances(2.0, 1.0, 0.0, 2.5, "dirichlet", 2.0))
        early = evaluate_pair(CircularPair.from_distances(2.0, 1.0, 0.0, 2.5, "dirichlet", -2.0))
        assert late.concurrence == pytest.approx(early.concurrence, rel=1e-10, abs=1e-14)

    def test_circular_concurrence_vanishes_and_reappears(self):
        """Neumann, d = 1: a band of ell without harvesting followed by harvesting again"""
        from detectors import CircularPair, evaluate_pair

        grid = [0.2 + 0.2 * k for k in range(25)]

        def pattern(gap):
            harvested = [evaluate_pair(CircularPair.from_distances(gap, ell, 0.0, 1.0, "neumann")).concurrence > 0
                         for ell in grid]
            return any(not h and any(harvested[i + 1:]) for i, h in enumerate(harvested))

        assert any(pattern(gap) for gap in (0.01, 0.05, 0.1, 0.2))

    def test_flat_limit(self):
        from detectors import StaticPair, evaluate_pair
        from oracles import flat_concurrence

        reference = flat_concurrence(0.01, 0.1)
        gaps = []
        for ell in (10.0, 20.0, 40.0, 80.0):
            result = evaluate_pair(StaticPair.from_distances(0.01, ell, 0.0, 0.1, "transparent"))
            gaps.append(abs(result.concurrence - reference))
        assert all(a > b for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] < 1e-2 * reference


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
