"""
adsharvest Geometry Tests
Proper distances, redshift factors and boundary-condition parsing
"""

import math
import pytest


class TestProperDistance:
    """Tests for the radial proper distance"""

    def test_origin_to_radius(self):
        """d(0, R) = ell * asinh(R / ell)"""
        from geometry import proper_distance

        assert proper_distance(2.0, 0.0, 3.0) == pytest.approx(2.0 * math.asinh(1.5), rel=1e-15)

    def test_symmetric_and_non_negative(self):
        from geometry import proper_distance

        assert proper_distance(1.0, 4.0, 1.0) == proper_distance(1.0, 1.0, 4.0)
        assert proper_distance(1.0, 2.5, 2.5) == 0.0

    def test_additive_along_ray(self):
        from geometry import proper_distance

        ell = 0.7
        total = proper_distance(ell, 0.2, 5.0)
        split = proper_distance(ell, 0.2, 1.3) + proper_distance(ell, 1.3, 5.0)
        assert total == pytest.approx(split, rel=1e-14)

    def test_flat_limit(self):
        """For R << ell the distance is the coordinate difference"""
        from geometry import proper_distance

        assert proper_distance(1e6, 1.0, 3.0) == pytest.approx(2.0, rel=1e-10)

    def test_round_trip_through_radius(self):
        from geometry import proper_distance, radius_from_proper_distance

        ell = 2.5
        for d in (0.0, 0.1, 1.0, 7.3):
            r = radius_from_proper_distance(ell, d)
            assert proper_distance(ell, 0.0, r) == pytest.approx(d, abs=1e-13)

    def test_negative_distance_rejected(self):
        from geometry import radius_from_proper_distance
        from common.errors import InvalidParameter

        with pytest.raises(InvalidParameter):
            radius_from_proper_distance(1.0, -0.5)

    def test_non_positive_ell_rejected(self):
        from geometry import AdsLength, proper_distance
        from common.errors import InvalidParameter

        with pytest.raises(InvalidParameter):
            AdsLength(0.0)
        with pytest.raises(InvalidParameter):
            proper_distance(-1.0, 0.0, 1.0)


class TestRedshiftAndAlphas:
    """Tests for gamma and the static kernel branch parameters"""

    def test_redshift_at_origin(self):
        from geometry import redshift

        assert redshift(3.0, 0.0) == 1.0

    def test_redshift_grows_outwards(self):
        from geometry import redshift

        assert redshift(1.0, 2.0) == pytest.approx(math.sqrt(5.0))
        assert redshift(1.0, 3.0) > redshift(1.0, 2.0)

    def test_alpha_minus_is_minus_one(self):
        from geometry import static_alphas

        for r in (0.0, 0.3, 2.0, 40.0):
            alpha_minus, _ = static_alphas(1.3, r)
            assert alpha_minus == pytest.approx(-1.0, abs=1e-15)

    def test_alpha_plus_limits(self):
        """alpha+ is 1 at the origin and tends to -1 far out"""
        from geometry import static_alphas

        assert static_alphas(1.0, 0.0)[1] == 1.0
        assert static_alphas(1.0, 1e4)[1] == pytest.approx(-1.0, abs=1e-7)
        assert static_alphas(1.0, 1.0)[1] == pytest.approx(0.0, abs=1e-15)


class TestBoundaryCondition:
    """Tests for boundary-condition parsing"""

    def test_names_and_values(self):
        from geometry import BoundaryCondition

        assert BoundaryCondition.from_name("dirichlet").zeta == 1
        assert BoundaryCondition.from_name("Transparent").zeta == 0
        assert BoundaryCondition.from_name("neumann").zeta == -1
        assert BoundaryCondition.from_name(-1) is BoundaryCondition.NEUMANN

    def test_unknown_name(self):
        from geometry import BoundaryCondition
        from common.errors import InvalidParameter

        with pytest.raises(InvalidParameter):
            BoundaryCondition.from_name("robin")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
