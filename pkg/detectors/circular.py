"""
adsharvest Circular Geodesics
=============================
Detectors orbiting the origin on circular geodesics with angular velocity
1/ell. Proper time equals coordinate time on every such orbit, so both
detectors share one transition probability and X depends on the radii
only through their proper separation.
"""

import math
import logging
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import integrate

from common.errors import DegenerateConfiguration, InvalidParameter, NonConvergence
from geometry import AdsLength, BoundaryCondition, RadialPosition, LengthLike, proper_distance
from numerics.quadrature import Tolerance, QuadResult, gaussian_cutoff
from .kernels import TWO_PI, BranchCut, branch_integral
from .static import (
    COINCIDENT_DETECTORS,
    INV_2_SQRT_2PI,
    INV_4_SQRT_PI,
    StaticDetector,
    shifted_weight,
    transition_probability_static_estimate,
)


logger = logging.getLogger("adsharvest.circular")


@dataclass(frozen=True)
class CircularPair:
    """Two detectors on circular geodesics at radii r_a, r_b."""
    r_a: RadialPosition
    r_b: RadialPosition
    gap_omega_sigma: float
    ell: AdsLength
    zeta: BoundaryCondition = BoundaryCondition.TRANSPARENT
    t0_over_sigma: float = 0.0

    def __post_init__(self):
        if not isinstance(self.ell, AdsLength):
            object.__setattr__(self, "ell", AdsLength(float(self.ell)))
        for name in ("r_a", "r_b"):
            value = getattr(self, name)
            if not isinstance(value, RadialPosition):
                object.__setattr__(self, name, RadialPosition(float(value)))
        object.__setattr__(self, "zeta", BoundaryCondition.from_name(self.zeta))
        if not (math.isfinite(self.gap_omega_sigma) and math.isfinite(self.t0_over_sigma)):
            raise InvalidParameter("gap and time delay must be finite")

    @classmethod
    def from_distances(cls, gap: float, ell: LengthLike, d_origin: float, separation: float,
                       zeta=BoundaryCondition.TRANSPARENT, t0: float = 0.0) -> "CircularPair":
        if separation < 0:
            raise InvalidParameter(f"separation must be non-negative, got {separation}")
        return cls(RadialPosition.from_proper_distance(ell, d_origin),
                   RadialPosition.from_proper_distance(ell, d_origin + separation),
                   gap, AdsLength(float(ell)), zeta, t0)

    @property
    def gap(self) -> float:
        return self.gap_omega_sigma

    @property
    def separation(self) -> float:
        return proper_distance(float(self.ell), self.r_a, self.r_b)


@dataclass(frozen=True)
class CircularKernelParams:
    """Derived scalars of a circular pair; k_x_shifted drops the t0 Gaussian."""
    a_tilde: float
    k_x: float
    k_x_shifted: float
    delta_t: float
    alpha_tilde: float
    shift: float
    cut_minus: BranchCut
    cut_plus: BranchCut


def alpha_tilde(ell: LengthLike, r_a: RadialPosition, r_b: RadialPosition) -> float:
    """ell^2 / (sqrt(R_A^2 + ell^2) sqrt(R_B^2 + ell^2) - R_A R_B), equal to sech(d/ell)."""
    xa, xb = r_a.r_over_ell, r_b.r_over_ell
    return 1.0 / (math.hypot(xa, 1.0) * math.hypot(xb, 1.0) - xa * xb)


def circular_kernel_params(pair: CircularPair) -> CircularKernelParams:
    ell = float(pair.ell)
    t0 = pair.t0_over_sigma
    alpha = alpha_tilde(ell, pair.r_a, pair.r_b)
    delta = abs(math.asinh(pair.r_b.r_over_ell) - math.asinh(pair.r_a.r_over_ell))
    # arccos(sech delta) without cancellation
    half = 2.0 * math.asin(min(1.0, math.sinh(0.5 * delta) / math.sqrt(math.cosh(delta))))
    cut_minus = BranchCut.from_lead(half)
    cut_plus = BranchCut.from_theta(half)
    shifted = math.sqrt(alpha) * math.exp(-pair.gap ** 2)
    return CircularKernelParams(
        a_tilde=0.25 * ell * ell,
        k_x=shifted * math.exp(-0.25 * t0 * t0),
        k_x_shifted=shifted,
        delta_t=0.5 * ell * t0,
        alpha_tilde=alpha,
        shift=t0 / ell,
        cut_minus=cut_minus,
        cut_plus=cut_plus,
    )


# ============================================================================
# TRANSITION PROBABILITY
# ============================================================================
def transition_probability_circular_estimate(gap: float, ell: LengthLike,
                                             zeta=BoundaryCondition.TRANSPARENT,
                                             tol: Optional[Tolerance] = None) -> QuadResult:
    detector = StaticDetector(gap, RadialPosition(0.0))
    return transition_probability_static_estimate(detector, ell, zeta, tol)


def transition_probability_circular(gap: float, ell: LengthLike,
                                    zeta=BoundaryCondition.TRANSPARENT,
                                    tol: Optional[Tolerance] = None) -> float:
    """
    Transition probability of a detector on any circular geodesic.

    The orbit radius drops out; the value is that of a static detector at
    the origin with the same gap.
    """
    return float(transition_probability_circular_estimate(gap, ell, zeta, tol).value)


def _comb_terms(a: float, spacing: float, tol: Tolerance) -> int:
    return math.ceil(gaussian_cutoff(a, tol.abs) / spacing) + 1


def _cauchy_pole_sum(numerator: Callable[[float], float], first_pole: float,
                     sign_at: Callable[[float], float], a: float, tol: Tolerance, label: str,
                     lead: Optional[Callable[[float], float]] = None) -> float:
    """
    PV int_0^inf numerator(y) / s(y) dy for s = sin(y/2) or cos(y/2).

    Every pole c gets [c - pi, c + pi] under QUADPACK's Cauchy weight
    1/(y - c) with the smooth factor (y - c) / s(y) = sign_at(c) u / sin(u/2),
    u = y - c. lead covers [0, first_pole - pi] when that stretch is not empty.
    """
    cutoff = gaussian_cutoff(a, tol.abs)
    options = dict(epsabs=tol.abs, epsrel=tol.rel, limit=200)

    def chord(u: float) -> float:
        return 2.0 if abs(u) < 1e-12 else u / math.sin(0.5 * u)

    total = 0.0
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        if lead is not None:
            total += integrate.quad(lead, 0.0, first_pole - math.pi, **options)[0]
        c = first_pole
        while c - math.pi < cutoff:
            sign = sign_at(c)
            total += integrate.quad(lambda y, c=c, sign=sign: sign * numerator(y) * chord(y - c),
                                    c - math.pi, c + math.pi, weight="cauchy", wvar=c, **options)[0]
            c += TWO_PI
    for warning in caught:
        logger.warning(f"{label}: {warning.message}")
    return total


def transition_probability_circular_direct(gap: float, ell: LengthLike,
                                           zeta=BoundaryCondition.TRANSPARENT,
                                           tol: Optional[Tolerance] = None) -> float:
    """
    Same quantity assembled from QUADPACK Cauchy-weight quadrature.

    Shares no quadrature with the static evaluator: each pole of sin(y/2)
    and cos(y/2) is handled by scipy's QAWC routine and the delta combs are
    summed directly.
    """
    tol = tol or Tolerance()
    zeta = BoundaryCondition.from_name(zeta)
    ell_value = float(AdsLength(float(ell)))
    a = 0.25 * ell_value * ell_value
    beta = ell_value * gap

    def damped_sin(y: float) -> float:
        return math.exp(-a * y * y) * math.sin(beta * y)

    def damped_cos(y: float) -> float:
        return math.exp(-a * y * y) * math.cos(beta * y)

    def sin_lead(y: float) -> float:
        return 2.0 * beta if y == 0.0 else damped_sin(y) / math.sin(0.5 * y)

    # sin(y/2) = (-1)^k sin(u/2) near y = 2 k pi; cos(y/2) = (-1)^(k+1) sin(u/2) near (2k+1) pi
    def sin_sign(c: float) -> float:
        return -1.0 if round(c / TWO_PI) % 2 else 1.0

    def cos_sign(c: float) -> float:
        return 1.0 if round((c - math.pi) / TWO_PI) % 2 else -1.0

    pv_sin = _cauchy_pole_sum(damped_sin, TWO_PI, sin_sign, a, tol, "circular P^-", lead=sin_lead)
    n = np.arange(-_comb_terms(a, TWO_PI, tol), _comb_terms(a, TWO_PI, tol) + 1, dtype=float)
    comb_sin = math.pi * float(np.sum((-1.0) ** n * np.cos(TWO_PI * n * beta)
                                      * np.exp(-a * (TWO_PI * n) ** 2)))
    value = INV_4_SQRT_PI * (comb_sin - pv_sin)
    if zeta.zeta:
        pv_cos = _cauchy_pole_sum(damped_cos, math.pi, cos_sign, a, tol, "circular P^+")
        m = 2.0 * np.arange(_comb_terms(a, math.pi, tol), dtype=float) + 1.0
        comb_cos = -TWO_PI * float(np.sum((-1.0) ** ((m - 1.0) / 2.0) * np.sin(m * math.pi * beta)
                                          * np.exp(-a * (m * math.pi) ** 2)))
        value -= zeta.zeta * INV_4_SQRT_PI * (pv_cos + comb_cos)
    return float(value)


# ============================================================================
# MATRIX ELEMENT X
# ============================================================================
def matrix_element_x_circular_estimate(pair: CircularPair, tol: Optional[Tolerance] = None) -> QuadResult:
    tol = tol or Tolerance()
    if pair.r_a == pair.r_b:
        raise DegenerateConfiguration(COINCIDENT_DETECTORS)
    params = circular_kernel_params(pair)
    weight = shifted_weight(params.a_tilde, 0.0, params.shift)

    def side(cut: BranchCut, label: str) -> QuadResult:
        try:
            return branch_integral(weight, cut, params.a_tilde, tol, shift=params.shift, label=label)
        except NonConvergence as exc:
            raise exc.located(label)

    bracket = side(params.cut_minus, "X~^-")
    zeta = pair.zeta.zeta
    if zeta:
        bracket = bracket + side(params.cut_plus, "X~^+").scaled(-float(zeta))
    result = bracket.scaled(-INV_2_SQRT_2PI * params.k_x_shifted)
    logger.debug(f"X~: ell={float(pair.ell):.6g} d={pair.separation:.6g} t0={pair.t0_over_sigma:.6g} "
                 f"zeta={zeta} value={complex(result.value):.10g}")
    return QuadResult(complex(result.value), result.abs_error_estimate, result.evaluations)


def matrix_element_x_circular(pair: CircularPair, tol: Optional[Tolerance] = None) -> complex:
    """
    Non-local matrix element X~ / lambda~^2 of a circular pair.

    The imaginary part is the timelike-segment contribution and survives
    the flat limit as the K0 term.

    Raises:
        DegenerateConfiguration: for coincident orbits
        NonConvergence: tagged with the failing branch and segment
    """
    return complex(matrix_element_x_circular_estimate(pair, tol).value)
