"""
adsharvest Numerics Tests
Special functions against scipy/mpmath references, and the quadrature kernels
"""

import math
import pytest
import numpy as np


class TestSpecialFunctions:
    """Tests for erf, erfc, I0 and K0"""

    def test_reference_values(self):
        from numerics import erf, bessel_i0, bessel_k0

        assert erf(1.0) == pytest.approx(0.8427007929497149, abs=1e-15)
        assert bessel_i0(1.0) == pytest.approx(1.2660658777520084, rel=1e-14)
        assert bessel_k0(1.0) == pytest.approx(0.42102443824070834, rel=1e-14)

    def test_erf_limits(self):
        from numerics import erf

        assert erf(0.0) == 0.0
        assert erf(7.0) == 1.0
        assert erf(-7.0) == -1.0
        assert erf(math.inf) == 1.0
        assert erf(-0.3) == -erf(0.3)

    def test_erf_against_mpmath(self):
        import mpmath
        from numerics import erf, erfc

        for x in np.linspace(-6.0, 6.0, 97):
            assert erf(float(x)) == pytest.approx(float(mpmath.erf(x)), abs=1e-14)
        for x in (0.5, 2.9, 3.1, 4.5, 6.0, 10.0, 20.0):
            assert erfc(x) == pytest.approx(float(mpmath.erfc(x)), rel=1e-12)

    def test_bessel_against_scipy(self):
        """100 points spread over the series, trapezoid and Hankel regimes"""
        from scipy import special
        from numerics import bessel_i0, bessel_k0, bessel_i0e, bessel_k0e

        grid = np.concatenate((np.geomspace(1e-6, 1.99, 34), np.linspace(2.01, 24.99, 33),
                               np.linspace(25.01, 120.0, 33)))
        assert grid.size == 100
        for x in map(float, grid):
            assert bessel_i0e(x) == pytest.approx(special.i0e(x), rel=2e-13)
            assert bessel_k0e(x) == pytest.approx(special.k0e(x), rel=2e-13)
            assert bessel_i0(x) == pytest.approx(special.i0(x), rel=2e-13)
            assert bessel_k0(x) == pytest.approx(special.k0(x), rel=2e-13)
        for x in (2.0, 25.0):
            assert bessel_k0(x) == pytest.approx(special.k0(x), rel=2e-13)

    def test_bessel_k0_domain(self):
        from numerics import bessel_k0
        from common.errors import InvalidParameter

        with pytest.raises(InvalidParameter):
            bessel_k0(0.0)
        with pytest.raises(InvalidParameter):
            bessel_k0(-1.0)

    def test_bessel_i0_domain(self):
        from numerics import bessel_i0
        from common.errors import InvalidParameter

        with pytest.raises(InvalidParameter):
            bessel_i0(-1.0)


class TestTanhSinh:
    """Tests for the double-exponential rule"""

    def test_arcsine_density(self):
        """int_{-1}^{1} dx / sqrt(1 - x^2) = pi, singular at both ends"""
        from numerics import tanh_sinh

        result = tanh_sinh(lambda x, da, db: 1.0 / np.sqrt(da * db), -1.0, 1.0, with_offsets=True)
        assert result.value == pytest.approx(math.pi, rel=1e-12)
        assert result.abs_error_estimate < 1e-9

    def test_inverse_sqrt(self):
        from numerics import tanh_sinh

        assert tanh_sinh(lambda x: 1.0 / np.sqrt(x), 0.0, 1.0).value == pytest.approx(2.0, rel=1e-12)

    def test_complete_elliptic_integral(self):
        """int_0^T dy / sqrt(2 (cos y - cos T)) = K(sin^2(T/2))"""
        from scipy import special
        from numerics import tanh_sinh

        theta = 2.0

        def f(y, da, db):
            # cos y - cos T = 2 sin((T + y)/2) sin((T - y)/2)
            return 1.0 / np.sqrt(4.0 * np.sin(0.5 * (theta + y)) * np.sin(0.5 * db))

        result = tanh_sinh(f, 0.0, theta, with_offsets=True)
        assert result.value == pytest.approx(special.ellipk(math.sin(theta / 2) ** 2), rel=1e-11)

    def test_empty_and_reversed_intervals(self):
        from numerics import tanh_sinh

        empty = tanh_sinh(np.cos, 1.0, 1.0)
        assert empty.value == 0.0
        assert empty.evaluations == 0
        forward = tanh_sinh(np.exp, 0.0, 1.0).value
        assert tanh_sinh(np.exp, 1.0, 0.0).value == pytest.approx(-forward, rel=1e-15)

    def test_non_finite_integrand(self):
        from numerics import tanh_sinh
        from common.errors import NonConvergence

        with pytest.raises(NonConvergence):
            tanh_sinh(lambda x: np.full_like(x, np.nan), 0.0, 1.0)

    def test_level_budget(self):
        from numerics import tanh_sinh, Tolerance
        from common.errors import NonConvergence

        wild = lambda x: np.sin(1.0 / x) / x
        with pytest.raises(NonConvergence):
            tanh_sinh(wild, 1e-6, 1.0, Tolerance(rel=1e-14, abs=1e-16, max_levels=4))
    def test_additive_over_split_intervals(self):
        from numerics import tanh_sinh

        def f(x):
            return np.cos(3.0 * x) / np.sqrt(x)

        whole = tanh_sinh(f, 0.0, 2.0)
        left, right = tanh_sinh(f, 0.0, 0.7), tanh_sinh(f, 0.7, 2.0)
        slack = whole.abs_error_estimate + left.abs_error_estimate + right.abs_error_estimate
        assert abs(whole.value - (left.value + right.value)) <= slack + 1e-14

    def test_refinement_tightens_estimate(self):
        """A larger level budget never reports a larger error estimate"""
        from numerics import tanh_sinh, Tolerance
        from common.errors import NonConvergence

        def f(x):
            return np.exp(x) * np.cos(10.0 * x)

        estimates = []
        for levels in (3, 4, 5):
            try:
                estimates.append(tanh_sinh(f, 0.0, 2.0, Tolerance(rel=1e-15, abs=1e-300,
                                                                  max_levels=levels)).abs_error_estimate)
            except NonConvergence as exc:
                estimates.append(exc.estimate)
        assert all(a >= b for a, b in zip(estimates, estimates[1:]))

        converged = tanh_sinh(f, 0.0, 2.0, Tolerance(max_levels=10))
        assert tanh_sinh(f, 0.0, 2.0, Tolerance(max_levels=14)).abs_error_estimate <= converged.abs_error_estimate



class TestGaussianOscillatory:
    """Tests for Gaussian-damped oscillatory integrals on the half line"""

    def test_gaussian_cosine_transform(self):
        """int_0^inf e^{-a y^2} cos(b y) dy = (1/2) sqrt(pi/a) e^{-b^2/(4a)}"""
        from numerics import gaussian_oscillatory

        a, b = 0.3, 2.5
        result = gaussian_oscillatory(a, b, lambda y: np.ones_like(y))
        exact = 0.5 * math.sqrt(math.pi / a) * math.exp(-b * b / (4 * a))
        assert result.value == pytest.approx(exact, rel=1e-10, abs=1e-14)

    def test_gaussian_sine_transform(self):
        """int_0^inf e^{-a y^2} sin(b y) dy is a Dawson function"""
        from scipy import special
        from numerics import gaussian_oscillatory

        a, b = 1.0, 3.0
        result = gaussian_oscillatory(a, b, lambda y: np.ones_like(y), oscillator="sin")
        exact = special.dawsn(b / (2 * math.sqrt(a))) / math.sqrt(a)
        assert result.value == pytest.approx(exact, rel=1e-10)

    def test_rejects_bad_damping(self):
        from numerics import gaussian_oscillatory
        from common.errors import InvalidParameter

        with pytest.raises(InvalidParameter):
            gaussian_oscillatory(0.0, 1.0, np.cos)


class TestPrincipalValue:
    """Tests for the periodic pole-lattice principal value"""

    def test_single_pole_pv(self):
        """PV int_0^inf e^{-y^2} / (y - 1) dy against scipy's Cauchy weight"""
        from scipy import integrate
        from numerics import pv_periodic_poles

        def kernel(y):
            return y - 1.0

        # the next pole, at y = 21, sits where the Gaussian has died out
        result = pv_periodic_poles(lambda y: np.exp(-y * y), 20.0, 1.0, 1.0, kernel=kernel, window=0.5)
        reference = integrate.quad(lambda y: math.exp(-y * y), 0.0, 12.0, weight="cauchy", wvar=1.0)[0]
        assert result.value == pytest.approx(reference, rel=1e-9)

    def test_pole_at_origin_rejected(self):
        from numerics import pv_periodic_poles
        from common.errors import PoleOnBoundary

        with pytest.raises(PoleOnBoundary):
            pv_periodic_poles(np.exp, 2 * math.pi, 0.0, 1.0, kernel=np.sin)

    def test_window_too_wide(self):
        from numerics import pv_periodic_poles
        from common.errors import InvalidParameter

        with pytest.raises(InvalidParameter):
            pv_periodic_poles(np.exp, 1.0, 0.5, 1.0, kernel=np.sin, window=0.8)

    def test_sin_pole_kernel_with_unit_frequency(self):
        """With beta = 1 the ratio sin(y)/sin(y/2) = 2 cos(y/2) has no poles left"""
        from detectors.kernels import sin_pole_pv

        result = sin_pole_pv(1.0, 1.0)
        assert result.value == pytest.approx(math.sqrt(math.pi) * math.exp(-1.0 / 16.0), rel=1e-10)

    def test_sin_pole_pv_against_cauchy_weight(self):
        """Pole windows summed against QUADPACK's Cauchy weight, one pole at a time"""
        from scipy import integrate
        from detectors.kernels import sin_pole_pv

        a, beta = 0.05, 0.37
        total = integrate.quad(lambda y: math.exp(-a * y * y) * math.sin(beta * y) / math.sin(0.5 * y),
                               1e-300, math.pi, epsabs=1e-14, epsrel=1e-12)[0]
        for k in range(1, 6):
            c = 2.0 * math.pi * k
            sign = -1.0 if k % 2 else 1.0

            def smooth(y, c=c, sign=sign):
                u = y - c
                return sign * math.exp(-a * y * y) * math.sin(beta * y) * (u / math.sin(0.5 * u) if u else 2.0)

            total += integrate.quad(smooth, c - math.pi, c + math.pi, weight="cauchy", wvar=c,
                                    epsabs=1e-14, epsrel=1e-12)[0]
        assert sin_pole_pv(a, beta).value == pytest.approx(total, rel=1e-8, abs=1e-12)


class TestTolerance:
    """Tests for Tolerance and QuadResult"""

    def test_invalid_tolerance(self):
        from numerics import Tolerance
        from common.errors import InvalidParameter

        with pytest.raises(InvalidParameter):
            Tolerance(rel=0.0)
        with pytest.raises(InvalidParameter):
            Tolerance(max_levels=1)

    def test_results_add(self):
        from numerics import QuadResult

        total = QuadResult(1.0, 1e-12, 10) + QuadResult(2.0, 2e-12, 5)
        assert total.value == 3.0
        assert total.abs_error_estimate == pytest.approx(3e-12)
        assert total.evaluations == 15
        assert sum([QuadResult(1.0), QuadResult(0.5)]).value == 1.5


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
