"""
adsharvest Detector Kernels
===========================
Integrals shared by the static and circular evaluators.

Provides:
- BranchCut: zero lattice of cos(y) + alpha, stored through its
  half-widths so both sides of every crossing stay exact
- branch_integral: int_0^inf w(y) / sqrt(cos(y - i eps) + alpha) dy with the
  tempered-distribution branch choice
- sin_pole_pv / cos_pole_pv: Gaussian-damped principal values over the
  poles of sin(y/2) and cos(y/2)
- sin_pole_comb / cos_pole_comb: the delta-comb sums that accompany them
"""

import math
import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from common.errors import DegenerateConfiguration
from numerics.quadrature import (
    Tolerance,
    QuadResult,
    ZERO,
    tanh_sinh,
    pv_periodic_poles,
    gaussian_cutoff,
    gaussian_tail,
    gaussian_truncation_index,
)


logger = logging.getLogger("adsharvest.kernels")

TWO_PI = 2.0 * math.pi
ARCCOS_CLAMP = 1e-12
SERIES_RADIUS = 1e-4   # |y| * max(1, |beta|) below this uses the sin-ratio series

# Segment j of the lattice carries sqrt(cos y + alpha) = i^j |...|
_BRANCH_FACTORS = (1.0, -1j, -1.0, 1j)   # 1 / i^j


# ============================================================================
# BRANCH LATTICE
# ============================================================================
@dataclass(frozen=True)
class BranchCut:
    """
    Sign-change lattice of cos(y) + alpha on y >= 0.

    With Theta = arccos(alpha) the crossings sit at (2k+1)pi -/+ Theta.
    Segments alternate between the positive stretch centred on 2k*pi
    (half-width lead = pi - Theta) and the negative stretch centred on
    (2k+1)pi (half-width Theta). Both half-widths are kept so callers can
    supply whichever one is small without cancellation.
    """
    theta: float
    lead: float

    @classmethod
    def from_theta(cls, theta: float) -> "BranchCut":
        return cls(theta=theta, lead=math.pi - theta)

    @classmethod
    def from_lead(cls, lead: float) -> "BranchCut":
        return cls(theta=math.pi - lead, lead=lead)

    @classmethod
    def from_alpha(cls, alpha: float) -> "BranchCut":
        """Build from alpha directly; |alpha| may exceed 1 by rounding only."""
        if abs(alpha) > 1.0:
            if abs(alpha) - 1.0 > ARCCOS_CLAMP:
                logger.warning(f"alpha={alpha!r} outside [-1, 1] beyond rounding; clamping")
            alpha = math.copysign(1.0, alpha)
        return cls.from_theta(math.acos(alpha))

    @property
    def alpha(self) -> float:
        return math.cos(self.theta)


def theta_lattice(theta: float, count: int) -> np.ndarray:
    """
    Segment boundaries theta_n = max(0, Theta + (2n - 1) pi), n = 0..count.

    On [theta_n, theta_{n+1}] the principal square root times (-1)^n
    reproduces the branch choice of branch_integral.
    """
    n = np.arange(count + 1, dtype=float)
    return np.maximum(0.0, theta + (2.0 * n - 1.0) * math.pi)


# ============================================================================
# BRANCH INTEGRAL
# ============================================================================
def branch_integral(weight: Callable[[np.ndarray], np.ndarray], cut: BranchCut, damping: float,
                    tol: Optional[Tolerance] = None, *, shift: float = 0.0, envelope: float = 1.0,
                    label: str = "branch") -> QuadResult:
    """
    int_0^inf weight(y) / sqrt(cos(y - i eps) + alpha) dy, eps -> 0+.

    The square root is |cos y + alpha|^{1/2} times i^j on the j-th segment
    of the lattice, starting from j = 0 on [0, pi - Theta]. Each segment is
    integrated in coordinates centred on its midpoint, where

        cos y + alpha = +/- 2 sin((h + s)/2) sin((h - s)/2)

    for half-width h, so the inverse-square-root endpoints are resolved
    exactly by tanh-sinh.

    Args:
        weight: Vectorised weight, |weight(y)| <= envelope * exp(-damping (|y| - shift)^2)
        cut: Crossing lattice
        damping: Gaussian damping of the weight
        tol: Target accuracy per segment
        shift: Offset of the Gaussian peak from y = 0
        envelope: Magnitude bound of the weight
        label: Prefix for NonConvergence locations

    Raises:
        DegenerateConfiguration: when two crossings merge (Theta = 0) or a
            crossing sits on y = 0 (Theta = pi); the integral diverges
    """
    tol = tol or Tolerance()
    if cut.theta <= 0.0 or cut.lead <= 0.0:
        raise DegenerateConfiguration(f"{label}: branch points merge (Theta={cut.theta:.3g}); "
                                      f"the integral is not finite")

    y_max = abs(shift) + gaussian_cutoff(damping, tol.abs, envelope)
    lead, theta = cut.lead, cut.theta

    def centred(centre: float):
        def integrand(s, da, db):
            gap = 2.0 * np.sin(0.5 * da) * np.sin(0.5 * db)
            return weight(centre + s) / np.sqrt(gap)
        return integrand

    def first(s, da, db):
        # s in [0, lead]; lead + s stays away from zero
        gap = 2.0 * np.sin(0.5 * (lead + s)) * np.sin(0.5 * db)
        return weight(s) / np.sqrt(gap)

    # block n of the theta lattice holds segments 2n and 2n + 1
    blocks = theta_lattice(theta, max(1, math.ceil((y_max + math.pi - theta) / TWO_PI)))
    segments = 2 * (len(blocks) - 1)

    total = tanh_sinh(first, 0.0, lead, tol, with_offsets=True, where=f"{label} segment 0")
    for j in range(1, segments):
        centre = float(j) * math.pi
        half = theta if j % 2 else lead
        piece = tanh_sinh(centred(centre), -half, half, tol, with_offsets=True,
                          where=f"{label} segment {j}")
        total = total + piece.scaled(_BRANCH_FACTORS[j % 4])
    edge = float(blocks[-1])

    tail = envelope * gaussian_tail(damping, max(edge - abs(shift), 0.0))
    logger.debug(f"{label}: Theta={theta:.6g} segments={segments} Y_max={y_max:.4g} "
                 f"evals={total.evaluations}")
    return QuadResult(total.value, total.abs_error_estimate + tail, total.evaluations)


# ============================================================================
# PRINCIPAL VALUES AND DELTA COMBS
# ============================================================================
def _sin_ratio(beta: float, y: np.ndarray) -> np.ndarray:
    """sin(beta y) / sin(y/2), with the removable point at y = 0 handled by series."""
    near = np.abs(y) * max(1.0, abs(beta)) < SERIES_RADIUS
    safe = np.where(near, 1.0, y)
    direct = np.sin(beta * safe) / np.sin(0.5 * safe)
    series = 2.0 * beta * (1.0 + y * y * (1.0 / 24.0 - beta * beta / 6.0))
    return np.where(near, series, direct)


def sin_pole_pv(a: float, beta: float, tol: Optional[Tolerance] = None) -> QuadResult:
    """PV int_0^inf e^{-a y^2} sin(beta y) / sin(y/2) dy."""
    if beta == 0.0:
        return ZERO

    def numerator(y):
        return np.exp(-a * y * y) * np.sin(beta * y)

    def ratio(y):
        return np.exp(-a * y * y) * _sin_ratio(beta, y)

    return pv_periodic_poles(numerator, TWO_PI, TWO_PI, a, tol, kernel=lambda y: np.sin(0.5 * y),
                             ratio=ratio)


def cos_pole_pv(a: float, beta: float, tol: Optional[Tolerance] = None) -> QuadResult:
    """PV int_0^inf e^{-a y^2} cos(beta y) / cos(y/2) dy."""

    def numerator(y):
        return np.exp(-a * y * y) * np.cos(beta * y)

    return pv_periodic_poles(numerator, TWO_PI, math.pi, a, tol, kernel=lambda y: np.cos(0.5 * y))


def sin_pole_comb(a: float, beta: float, abs_tol: float) -> float:
    """pi * sum_{n in Z} (-1)^n cos(2 n pi beta) e^{-4 n^2 pi^2 a}."""
    count = gaussian_truncation_index(a, TWO_PI, abs_tol)
    n = np.arange(1, count, dtype=float)
    terms = np.where(n % 2, -1.0, 1.0) * np.cos(TWO_PI * n * beta) * np.exp(-a * (TWO_PI * n) ** 2)
    return math.pi * (1.0 + 2.0 * float(np.sum(terms)))


def cos_pole_comb(a: float, beta: float, abs_tol: float) -> float:
    """-2 pi * sum_{n >= 0} (-1)^n sin((2n+1) pi beta) e^{-a (2n+1)^2 pi^2}."""
    count = gaussian_truncation_index(a, math.pi, abs_tol)
    m = np.arange(1, max(count, 2), 2, dtype=float)
    signs = np.where(((m - 1.0) / 2.0) % 2, -1.0, 1.0)
    terms = signs * np.sin(m * math.pi * beta) * np.exp(-a * (m * math.pi) ** 2)
    return -TWO_PI * float(np.sum(terms))
