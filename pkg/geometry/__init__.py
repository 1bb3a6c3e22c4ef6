# adsharvest Geometry Package
# AdS3 coordinates, proper distances and redshift factors

from .ads import (
    BoundaryCondition,
    ALL_BOUNDARY_CONDITIONS,
    AdsLength,
    RadialPosition,
    LengthLike,
    PositionLike,
    proper_distance,
    radius_from_proper_distance,
    redshift,
    static_alphas,
)

__all__ = [
    # Types
    "BoundaryCondition",
    "ALL_BOUNDARY_CONDITIONS",
    "AdsLength",
    "RadialPosition",
    "LengthLike",
    "PositionLike",
    # Operations
    "proper_distance",
    "radius_from_proper_distance",
    "redshift",
    "static_alphas",
]
