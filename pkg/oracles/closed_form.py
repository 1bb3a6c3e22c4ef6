"""
adsharvest Closed-Form Oracles
==============================
Independent references for the AdS3 evaluators.

- Flat (2+1)-dimensional Minkowski space: transition probability,
  matrix element X and concurrence of two static detectors at proper
  separation d
- Small sigma/ell expansion of the static transition probability through
  (sigma/ell)^4
"""

import math
import logging
from dataclasses import dataclass
from typing import List

from common.errors import InvalidParameter
from geometry import BoundaryCondition
from numerics.specialfun import erfc, bessel_i0e, bessel_k0e
from detectors.harvest import concurrence


logger = logging.getLogger("adsharvest.oracles")

SQRT_PI = math.sqrt(math.pi)
PERTURBATIVE_MIN_ELL = 10.0
MAX_ORDER = 4


@dataclass(frozen=True)
class FlatPairConfig:
    """Two static detectors in flat space, a proper distance d apart."""
    gap_omega_sigma: float
    separation_d_over_sigma: float

    def __post_init__(self):
        if not self.separation_d_over_sigma > 0:
            raise InvalidParameter(f"flat separation must be positive, got {self.separation_d_over_sigma}")


def flat_transition_probability(gap: float) -> float:
    """(sqrt(pi)/4)(1 - erf(Omega sigma)), computed through erfc."""
    return 0.25 * SQRT_PI * erfc(gap)


def flat_matrix_element_x(cfg: FlatPairConfig) -> complex:
    """
    -(1/4 sqrt(pi)) e^{-d^2/8 - Omega^2} (pi I0(d^2/8) - i K0(d^2/8)).

    Example:
        >>> x = flat_matrix_element_x(FlatPairConfig(0.0, 1.0))
        >>> x.real < 0 < x.imag
        True
    """
    q = 0.125 * cfg.separation_d_over_sigma ** 2
    damping = math.exp(-cfg.gap_omega_sigma ** 2) / (4.0 * SQRT_PI)
    # e^{-q} I0(q) and e^{-q} K0(q) = e^{-2q} (e^{q} K0(q))
    return -damping * complex(math.pi * bessel_i0e(q), -math.exp(-2.0 * q) * bessel_k0e(q))


def flat_concurrence(gap: float, d: float) -> float:
    """Concurrence per lambda~^2 of two flat-space detectors at separation d."""
    p = flat_transition_probability(gap)
    return concurrence(p, p, flat_matrix_element_x(FlatPairConfig(gap, d)))


def perturbative_coefficients(gap: float, zeta, d_origin: float = 0.0) -> List[float]:
    """Coefficients c_k of sum_k c_k (sigma/ell)^k, k = 0..4."""
    z = BoundaryCondition.from_name(zeta).zeta
    w2 = gap * gap
    gauss = math.exp(-w2)
    return [
        flat_transition_probability(gap),
        -z * gauss / 4.0,
        -gap * gauss / 24.0,
        -z * gauss * (1.0 - 2.0 * w2) / 16.0,
        gap * gauss * (120.0 * d_origin * d_origin + 14.0 * w2 - 21.0) / 2880.0,
    ]


def perturbative_transition_probability(gap: float, ell: float, zeta=BoundaryCondition.TRANSPARENT,
                                        d_origin: float = 0.0, order: int = MAX_ORDER) -> float:
    """
    Small sigma/ell expansion of P_D / lambda~^2 through (sigma/ell)^order.

    Args:
        gap: Omega sigma
        ell: AdS length in units of sigma, at least 10
        zeta: Boundary condition
        d_origin: Proper distance of the detector from the origin
        order: Highest power kept, 0..4

    Raises:
        InvalidParameter: for order outside 0..4 or ell below 10
    """
    if not 0 <= order <= MAX_ORDER:
        raise InvalidParameter(f"perturbative order must be in 0..{MAX_ORDER}, got {order}")
    if not ell >= PERTURBATIVE_MIN_ELL:
        raise InvalidParameter(f"perturbative series needs ell/sigma >= {PERTURBATIVE_MIN_ELL}, got {ell}")
    if d_origin < 0:
        raise InvalidParameter(f"d_origin must be non-negative, got {d_origin}")
    inverse = 1.0 / ell
    coefficients = perturbative_coefficients(gap, zeta, d_origin)
    return sum(c * inverse ** k for k, c in enumerate(coefficients[:order + 1]))
