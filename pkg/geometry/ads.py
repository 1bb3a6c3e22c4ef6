"""
adsharvest AdS3 Geometry
========================
Coordinates, proper distances and redshift factors for detectors in AdS3.

All lengths are dimensionless, measured in units of the switching width
sigma. Radial positions are stored as r/ell and may be built either from a
radial coordinate R/sigma or from a proper distance to the origin.

Provides:
- BoundaryCondition selector (Dirichlet / transparent / Neumann)
- proper_distance, radius_from_proper_distance, redshift
- static_alphas, the branch parameters of a static detector's kernel
"""

import math
from enum import IntEnum
from dataclasses import dataclass
from typing import Tuple, Union

from common.errors import InvalidParameter


# ============================================================================
# BOUNDARY CONDITIONS
# ============================================================================
class BoundaryCondition(IntEnum):
    """Field boundary condition at spatial infinity; the value is zeta."""
    NEUMANN = -1
    TRANSPARENT = 0
    DIRICHLET = 1

    @property
    def zeta(self) -> int:
        return int(self.value)

    @classmethod
    def from_name(cls, name: Union[str, int, "BoundaryCondition"]) -> "BoundaryCondition":
        """
        Parse "dirichlet" / "transparent" / "neumann" or a zeta value.

        Example:
            >>> BoundaryCondition.from_name("neumann").zeta
            -1
        """
        if isinstance(name, BoundaryCondition):
            return name
        if isinstance(name, int):
            return cls(name)
        key = str(name).strip().lower()
        aliases = {"dirichlet": cls.DIRICHLET, "transparent": cls.TRANSPARENT,
                   "neumann": cls.NEUMANN, "1": cls.DIRICHLET, "+1": cls.DIRICHLET,
                   "0": cls.TRANSPARENT, "-1": cls.NEUMANN}
        if key not in aliases:
            raise InvalidParameter(f"unknown boundary condition: {name!r}")
        return aliases[key]


ALL_BOUNDARY_CONDITIONS = (BoundaryCondition.DIRICHLET, BoundaryCondition.TRANSPARENT,
                           BoundaryCondition.NEUMANN)


# ============================================================================
# DOMAIN TYPES
# ============================================================================
@dataclass(frozen=True)
class AdsLength:
    """AdS curvature radius ell in units of sigma."""
    ell_over_sigma: float

    def __post_init__(self):
        if not (math.isfinite(self.ell_over_sigma) and self.ell_over_sigma > 0):
            raise InvalidParameter(f"AdS length must be positive and finite, got {self.ell_over_sigma}")

    def __float__(self) -> float:
        return float(self.ell_over_sigma)


@dataclass(frozen=True)
class RadialPosition:
    """Radial coordinate as the ratio r/ell."""
    r_over_ell: float

    def __post_init__(self):
        if not (math.isfinite(self.r_over_ell) and self.r_over_ell >= 0):
            raise InvalidParameter(f"radial position must be non-negative and finite, got {self.r_over_ell}")

    @classmethod
    def from_radius(cls, ell: "LengthLike", radius: float) -> "RadialPosition":
        """Build from the radial coordinate R in units of sigma."""
        return cls(float(radius) / _ell(ell))

    @classmethod
    def from_proper_distance(cls, ell: "LengthLike", distance: float) -> "RadialPosition":
        """Build from the proper distance d(0, R) in units of sigma."""
        return radius_from_proper_distance(ell, distance)

    def radius(self, ell: "LengthLike") -> float:
        """Radial coordinate R in units of sigma."""
        return self.r_over_ell * _ell(ell)

    def distance_from_origin(self, ell: "LengthLike") -> float:
        """Proper distance d(0, R) in units of sigma."""
        return _ell(ell) * math.asinh(self.r_over_ell)


LengthLike = Union[AdsLength, float, int]
PositionLike = Union[RadialPosition, float, int]


def _ell(ell: LengthLike) -> float:
    value = float(ell)
    if not (math.isfinite(value) and value > 0):
        raise InvalidParameter(f"AdS length must be positive and finite, got {value}")
    return value


def _radius(ell: float, r: PositionLike) -> float:
    if isinstance(r, RadialPosition):
        return r.radius(ell)
    value = float(r)
    if not (math.isfinite(value) and value >= 0):
        raise InvalidParameter(f"radial coordinate must be non-negative and finite, got {value}")
    return value


# ============================================================================
# OPERATIONS
# ============================================================================
def proper_distance(ell: LengthLike, r1: PositionLike, r2: PositionLike) -> float:
    """
    Geodesic distance at equal coordinate time between two radial positions
    on a common ray.

    Args:
        ell: AdS length in units of sigma
        r1, r2: Radial coordinates R/sigma (floats) or RadialPosition objects

    Returns:
        d(R1, R2) in units of sigma, always non-negative
    """
    ell_value = _ell(ell)
    lo, hi = sorted((_radius(ell_value, r1), _radius(ell_value, r2)))
    # ell*ln[(R2+sqrt(R2^2+l^2))/(R1+sqrt(R1^2+l^2))] == ell*(asinh(R2/l) - asinh(R1/l))
    return ell_value * (math.asinh(hi / ell_value) - math.asinh(lo / ell_value))


def radius_from_proper_distance(ell: LengthLike, distance: float) -> RadialPosition:
    """
    Invert proper_distance from the origin: R = ell * sinh(d / ell).

    Raises:
        InvalidParameter: if distance is negative
    """
    ell_value = _ell(ell)
    if not (math.isfinite(distance) and distance >= 0):
        raise InvalidParameter(f"proper distance must be non-negative, got {distance}")
    return RadialPosition(math.sinh(distance / ell_value))


def redshift(ell: LengthLike, r: PositionLike) -> float:
    """Redshift factor gamma = sqrt((R/ell)^2 + 1) of a static detector."""
    ell_value = _ell(ell)
    x = _radius(ell_value, r) / ell_value
    return math.hypot(x, 1.0)


def static_alphas(ell: LengthLike, r: PositionLike) -> Tuple[float, float]:
    """
    Branch parameters (alpha_minus, alpha_plus) of a static detector's
    self-correlation kernel, [-(R/ell)^2 -/+ 1] / gamma^2.

    alpha_minus is -1 for every position.
    """
    ell_value = _ell(ell)
    x2 = (_radius(ell_value, r) / ell_value) ** 2
    gamma2 = x2 + 1.0
    return (-x2 - 1.0) / gamma2, (1.0 - x2) / gamma2
