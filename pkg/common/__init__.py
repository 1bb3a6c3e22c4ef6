# adsharvest Common Package
# Error hierarchy and runtime configuration

from .errors import (
    HarvestError,
    InvalidParameter,
    NonConvergence,
    PoleOnBoundary,
    DegenerateConfiguration,
    ExtrapolationUnstable,
)

from .config import (
    HarvestConfig,
    get_config,
    set_config,
    reset_config,
)

__all__ = [
    # Errors
    "HarvestError",
    "InvalidParameter",
    "NonConvergence",
    "PoleOnBoundary",
    "DegenerateConfiguration",
    "ExtrapolationUnstable",
    # Configuration
    "HarvestConfig",
    "get_config",
    "set_config",
    "reset_config",
]
