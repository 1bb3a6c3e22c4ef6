"""
adsharvest Static Detectors
===========================
Transition probability and non-local matrix element X for two detectors
held at fixed radii on a common ray of AdS3, with Gaussian switching in
proper time and a coordinate-time delay t0 between the switchings.

All results are per lambda~^2 = lambda^2 sigma.

Provides:
- StaticDetector, StaticPair: validated inputs
- static_kernel_params: the derived scalars every formula consumes
- transition_probability_static: P_D = P_D^- - zeta P_D^+
- matrix_element_x_static: X = -(K_X / 2 sqrt(pi)) [S^- - zeta S^+]
"""

import math
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from common.errors import DegenerateConfiguration, InvalidParameter, NonConvergence
from geometry import (
    AdsLength,
    BoundaryCondition,
    RadialPosition,
    LengthLike,
    proper_distance,
    redshift,
    static_alphas,
)
from numerics.quadrature import Tolerance, QuadResult
from .kernels import (
    BranchCut,
    branch_integral,
    sin_pole_pv,
    cos_pole_pv,
    sin_pole_comb,
    cos_pole_comb,
)


logger = logging.getLogger("adsharvest.static")

INV_4_SQRT_PI = 1.0 / (4.0 * math.sqrt(math.pi))
INV_2_SQRT_2PI = 1.0 / (2.0 * math.sqrt(2.0 * math.pi))
INV_2_SQRT_PI = 1.0 / (2.0 * math.sqrt(math.pi))

# Below this branch half-width the boundary term uses the alpha = 1 pole form;
# the two differ by O(Theta^2).
PV_THETA_MIN = 1e-8


# ============================================================================
# DOMAIN TYPES
# ============================================================================
@dataclass(frozen=True)
class StaticDetector:
    """A detector with gap Omega*sigma held at a fixed radius."""
    gap_omega_sigma: float
    position: RadialPosition

    def __post_init__(self):
        if not math.isfinite(self.gap_omega_sigma):
            raise InvalidParameter(f"gap must be finite, got {self.gap_omega_sigma}")
        if not isinstance(self.position, RadialPosition):
            object.__setattr__(self, "position", RadialPosition(float(self.position)))

    @classmethod
    def at_proper_distance(cls, gap: float, ell: LengthLike, d_origin: float) -> "StaticDetector":
        """Place the detector a proper distance d(0, R) from the origin."""
        return cls(gap, RadialPosition.from_proper_distance(ell, d_origin))

    @property
    def gamma(self) -> float:
        return math.hypot(self.position.r_over_ell, 1.0)

    @property
    def rapidity(self) -> float:
        """rho = asinh(R/ell), the proper distance from the origin in units of ell."""
        return math.asinh(self.position.r_over_ell)


@dataclass(frozen=True)
class StaticPair:
    """Two static detectors with a shared gap, AdS length and boundary condition."""
    detector_a: StaticDetector
    detector_b: StaticDetector
    ell: AdsLength
    zeta: BoundaryCondition = BoundaryCondition.TRANSPARENT
    t0_over_sigma: float = 0.0

    def __post_init__(self):
        if not isinstance(self.ell, AdsLength):
            object.__setattr__(self, "ell", AdsLength(float(self.ell)))
        object.__setattr__(self, "zeta", BoundaryCondition.from_name(self.zeta))
        if self.detector_a.gap_omega_sigma != self.detector_b.gap_omega_sigma:
            raise InvalidParameter("both detectors must share the same gap")
        if not math.isfinite(self.t0_over_sigma):
            raise InvalidParameter(f"time delay must be finite, got {self.t0_over_sigma}")

    @classmethod
    def from_distances(cls, gap: float, ell: LengthLike, d_origin: float, separation: float,
                       zeta=BoundaryCondition.TRANSPARENT, t0: float = 0.0) -> "StaticPair":
        """A at d(0, R_A) = d_origin, B a further `separation` out along the ray."""
        if separation < 0:
            raise InvalidParameter(f"separation must be non-negative, got {separation}")
        return cls(StaticDetector.at_proper_distance(gap, ell, d_origin),
                   StaticDetector.at_proper_distance(gap, ell, d_origin + separation),
                   AdsLength(float(ell)), zeta, t0)

    @property
    def gap(self) -> float:
        return self.detector_a.gap_omega_sigma

    @property
    def separation(self) -> float:
        """Proper distance d(R_A, R_B) in units of sigma."""
        ell = float(self.ell)
        return proper_distance(ell, self.detector_a.position, self.detector_b.position)

    def swapped(self) -> "StaticPair":
        return StaticPair(self.detector_b, self.detector_a, self.ell, self.zeta, self.t0_over_sigma)


@dataclass(frozen=True)
class DetectorKernel:
    """Derived scalars of one detector's transition probability."""
    a: float
    beta: float
    alpha_plus: float
    cut: BranchCut


@dataclass(frozen=True)
class StaticKernelParams:
    """
    Derived scalars of a static pair.

    k_x is the printed prefactor; k_x_shifted absorbs the t0 Gaussian into
    the weight, which is then centred at y = +/- shift.
    """
    kernel_a: DetectorKernel
    kernel_b: DetectorKernel
    k_x: complex
    k_x_shifted: complex
    a_x: float
    delta_t: float
    beta_x: float
    alpha_plus_x: float
    alpha_minus_x: float
    cut_plus: BranchCut
    cut_minus: BranchCut
    shift: float


# ============================================================================
# KERNEL PARAMETERS
# ============================================================================
def detector_kernel(det: StaticDetector, ell: LengthLike) -> DetectorKernel:
    """a_D, beta_D, alpha_D^+ and the branch lattice of one detector."""
    ell_value = float(ell)
    gamma = redshift(ell_value, det.position)
    alpha_minus, alpha_plus = static_alphas(ell_value, det.position)
    if abs(alpha_minus + 1.0) > 4 * np.finfo(float).eps:
        raise InvalidParameter(f"alpha_D^- = {alpha_minus!r} is not -1")
    # Theta_D = arccos(alpha_D^+) = 2 asin(tanh rho)
    theta = 2.0 * math.asin(math.tanh(det.rapidity))
    return DetectorKernel(
        a=0.25 * (gamma * ell_value) ** 2,
        beta=gamma * ell_value * det.gap_omega_sigma,
        alpha_plus=alpha_plus,
        cut=BranchCut.from_theta(theta),
    )


def static_kernel_params(pair: StaticPair) -> StaticKernelParams:
    """
    Every derived scalar of a static pair.

    Example:
        >>> pair = StaticPair.from_distances(0.5, 1.0, 0.0, 0.0)
        >>> static_kernel_params(pair).alpha_minus_x
        -1.0
    """
    ell = float(pair.ell)
    da, db = pair.detector_a, pair.detector_b
    ga, gb = da.gamma, db.gamma
    xa, xb = da.position.r_over_ell, db.position.r_over_ell
    omega, t0 = pair.gap, pair.t0_over_sigma

    g, h = ga * ga, gb * gb
    total = g + h
    reduced = g * h / total
    a_x = 0.5 * reduced * ell * ell
    delta_t = -t0 * ell * reduced
    beta_x = ga * gb * (ga - gb) * ell * omega / total

    root = math.sqrt(ga * gb / total)
    envelope = -0.5 * omega * omega * (ga + gb) ** 2 / total
    phase = 0.5 * omega * t0 * (ga + gb) ** 2 * (ga - gb) / total
    k_x_shifted = root * complex(math.exp(envelope) * math.cos(phase), math.exp(envelope) * math.sin(phase))
    k_x = k_x_shifted * math.exp(-0.5 * t0 * t0 * reduced)

    # pi - arccos(alpha^-) and arccos(alpha^+) through rapidities
    norm = math.sqrt(ga * gb)
    lead_minus = 2.0 * math.asin(min(1.0, math.sinh(0.5 * abs(da.rapidity - db.rapidity)) / norm))
    theta_plus = 2.0 * math.asin(min(1.0, math.sinh(0.5 * (da.rapidity + db.rapidity)) / norm))
    cut_minus = BranchCut.from_lead(lead_minus)
    cut_plus = BranchCut.from_theta(theta_plus)

    return StaticKernelParams(
        kernel_a=detector_kernel(da, ell),
        kernel_b=detector_kernel(db, ell),
        k_x=k_x,
        k_x_shifted=k_x_shifted,
        a_x=a_x,
        delta_t=delta_t,
        beta_x=beta_x,
        alpha_plus_x=(1.0 - xa * xb) / (ga * gb),
        alpha_minus_x=(-1.0 - xa * xb) / (ga * gb),
        cut_plus=cut_plus,
        cut_minus=cut_minus,
        shift=-t0 / ell,
    )


# ============================================================================
# TRANSITION PROBABILITY
# ============================================================================
def vacuum_term(a: float, beta: float, tol: Tolerance) -> QuadResult:
    """P_D^-: sin(y/2) principal value plus its delta comb."""
    try:
        pv = sin_pole_pv(a, beta, tol)
    except NonConvergence as exc:
        raise exc.located("P_D^-")
    comb = sin_pole_comb(a, beta, tol.abs)
    return QuadResult(INV_4_SQRT_PI * (comb - pv.value),
                      INV_4_SQRT_PI * (pv.abs_error_estimate + tol.abs), pv.evaluations)


def origin_boundary_term(a: float, beta: float, tol: Tolerance) -> QuadResult:
    """P_D^+ for alpha^+ = 1: cos(y/2) principal value plus its delta comb."""
    try:
        pv = cos_pole_pv(a, beta, tol)
    except NonConvergence as exc:
        raise exc.located("P_D^+")
    comb = cos_pole_comb(a, beta, tol.abs)
    return QuadResult(INV_4_SQRT_PI * (pv.value + comb),
                      INV_4_SQRT_PI * (pv.abs_error_estimate + tol.abs), pv.evaluations)


def boundary_term(kernel: DetectorKernel, tol: Tolerance) -> QuadResult:
    """P_D^+ = Re int e^{-a y^2} e^{-i beta y} / sqrt(cos(y - i eps) + alpha^+) / (2 sqrt(2 pi))."""
    if kernel.cut.theta < PV_THETA_MIN:
        return origin_boundary_term(kernel.a, kernel.beta, tol)
    a, beta = kernel.a, kernel.beta

    def weight(y):
        phase = beta * y
        return np.exp(-a * y * y) * (np.cos(phase) - 1j * np.sin(phase))

    try:
        raw = branch_integral(weight, kernel.cut, a, tol, label="P_D^+")
    except NonConvergence as exc:
        raise exc.located("P_D^+")
    return raw.real().scaled(INV_2_SQRT_2PI)


def transition_probability_static_estimate(det: StaticDetector, ell: LengthLike,
                                           zeta=BoundaryCondition.TRANSPARENT,
                                           tol: Optional[Tolerance] = None) -> QuadResult:
    """Like transition_probability_static, also returning the error estimate."""
    tol = tol or Tolerance()
    zeta = BoundaryCondition.from_name(zeta)
    kernel = detector_kernel(det, ell)
    result = vacuum_term(kernel.a, kernel.beta, tol)
    if zeta.zeta:
        result = result + boundary_term(kernel, tol).scaled(-float(zeta.zeta))
    logger.debug(f"P_D: ell={float(ell):.6g} R/ell={det.position.r_over_ell:.6g} "
                 f"gap={det.gap_omega_sigma:.6g} zeta={zeta.zeta} value={result.value:.12g} "
                 f"err={result.abs_error_estimate:.2e}")
    return result


def transition_probability_static(det: StaticDetector, ell: LengthLike,
                                  zeta=BoundaryCondition.TRANSPARENT,
                                  tol: Optional[Tolerance] = None) -> float:
    """
    Transition probability P_D / lambda~^2 of a static detector.

    Args:
        det: The detector (gap and radius)
        ell: AdS length in units of sigma
        zeta: Boundary condition (name, zeta value or BoundaryCondition)
        tol: Quadrature tolerance

    Returns:
        P_D per lambda~^2, real

    Raises:
        NonConvergence: tagged with the failing sub-term
    """
    return float(transition_probability_static_estimate(det, ell, zeta, tol).value)


# ============================================================================
# MATRIX ELEMENT X
# ============================================================================
COINCIDENT_DETECTORS = ("detectors coincide (R_A = R_B): the vacuum term of X carries the light-cone "
                        "singularity (t - t')^-1 at every time delay, which is not integrable")


def shifted_weight(a: float, beta: float, shift: float):
    """(1/2)[e^{-a (y - y0)^2} e^{i beta y} + e^{-a (y + y0)^2} e^{-i beta y}]."""

    def weight(y):
        phase = beta * y
        c, s = np.cos(phase), np.sin(phase)
        left = np.exp(-a * (y - shift) ** 2)
        right = np.exp(-a * (y + shift) ** 2)
        return 0.5 * ((left * c + right * c) + 1j * (left * s - right * s))

    return weight


def matrix_element_x_static_estimate(pair: StaticPair, tol: Optional[Tolerance] = None) -> QuadResult:
    """Like matrix_element_x_static, also returning the error estimate."""
    tol = tol or Tolerance()
    if pair.detector_a.position == pair.detector_b.position:
        raise DegenerateConfiguration(COINCIDENT_DETECTORS)
    params = static_kernel_params(pair)
    weight = shifted_weight(params.a_x, params.beta_x, params.shift)

    def side(cut: BranchCut, label: str) -> QuadResult:
        try:
            return branch_integral(weight, cut, params.a_x, tol, shift=params.shift, label=label)
        except NonConvergence as exc:
            raise exc.located(label)

    bracket = side(params.cut_minus, "X^-")
    zeta = pair.zeta.zeta
    if zeta:
        bracket = bracket + side(params.cut_plus, "X^+").scaled(-float(zeta))
    result = bracket.scaled(-INV_2_SQRT_PI * params.k_x_shifted)
    logger.debug(f"X: ell={float(pair.ell):.6g} d={pair.separation:.6g} t0={pair.t0_over_sigma:.6g} "
                 f"zeta={zeta} value={complex(result.value):.10g} err={result.abs_error_estimate:.2e}")
    return QuadResult(complex(result.value), result.abs_error_estimate, result.evaluations)


def matrix_element_x_static(pair: StaticPair, tol: Optional[Tolerance] = None) -> complex:
    """
    Non-local matrix element X / lambda~^2 of a static pair.

    Raises:
        DegenerateConfiguration: for coincident detectors (R_A = R_B),
            whatever the time delay
        NonConvergence: tagged with the failing branch and segment
    """
    return complex(matrix_element_x_static_estimate(pair, tol).value)


def pair_transition_probabilities(pair: StaticPair, tol: Optional[Tolerance] = None
                                  ) -> Tuple[QuadResult, QuadResult]:
    """P_A and P_B, each with its own redshift."""
    ell = pair.ell
    p_a = transition_probability_static_estimate(pair.detector_a, ell, pair.zeta, tol)
    if pair.detector_b.position == pair.detector_a.position:
        return p_a, p_a
    return p_a, transition_probability_static_estimate(pair.detector_b, ell, pair.zeta, tol)
