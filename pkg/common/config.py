"""
adsharvest Runtime Configuration
================================
Tolerances, parallelism and output defaults shared by the CLI and the
sweep engine.

Values come from (lowest to highest priority):
- dataclass defaults
- ADSHARVEST_* environment variables (a .env file is honoured by main.py)
- explicit command-line flags
"""

import os
import logging
from typing import Dict, Optional
from dataclasses import dataclass, asdict

from .errors import InvalidParameter


logger = logging.getLogger("adsharvest.config")

ENV_PREFIX = "ADSHARVEST_"
OUTPUT_FORMATS = ("csv", "json")


# ============================================================================
# CONFIGURATION
# ============================================================================
@dataclass
class HarvestConfig:
    """Process-wide numerical and output settings."""
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_levels: int = 12
    jobs: Optional[int] = None  # None -> available parallelism
    output_format: str = "csv"
    log_level: str = "INFO"
    metrics_path: Optional[str] = None

    def __post_init__(self):
        if self.jobs is None:
            self.jobs = os.cpu_count() or 1
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise InvalidParameter("tolerances must be strictly positive")
        if self.max_levels < 3:
            raise InvalidParameter("max_levels must be at least 3")
        if self.jobs < 1:
            raise InvalidParameter("jobs must be at least 1")
        self.output_format = self.output_format.lower()
        if self.output_format not in OUTPUT_FORMATS:
            raise InvalidParameter(f"unknown output format: {self.output_format}")
        self.log_level = self.log_level.upper()

    def tolerance(self):
        """Build the quadrature Tolerance matching this configuration."""
        from numerics.quadrature import Tolerance
        return Tolerance(rel=self.rel_tol, abs=self.abs_tol, max_levels=self.max_levels)

    def to_dict(self) -> Dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict) -> "HarvestConfig":
        return cls(**{k: v for k, v in data.items() if k in cls.__dataclass_fields__})

    @classmethod
    def from_env(cls, environ: Optional[Dict[str, str]] = None) -> "HarvestConfig":
        """
        Read ADSHARVEST_* variables.

        Args:
            environ: Mapping to read instead of os.environ

        Returns:
            HarvestConfig with environment overrides applied
        """
        env = os.environ if environ is None else environ
        casts = {
            "rel_tol": float,
            "abs_tol": float,
            "max_levels": int,
            "jobs": int,
            "output_format": str,
            "log_level": str,
            "metrics_path": str,
        }
        values = {}
        for name, cast in casts.items():
            raw = env.get(ENV_PREFIX + name.upper())
            if raw is None or raw == "":
                continue
            try:
                values[name] = cast(raw)
            except ValueError:
                raise InvalidParameter(f"{ENV_PREFIX}{name.upper()}={raw!r} is not a valid {cast.__name__}")
        # FORMAT is the documented short name for output_format
        if "output_format" not in values and env.get(ENV_PREFIX + "FORMAT"):
            values["output_format"] = env[ENV_PREFIX + "FORMAT"]
        return cls(**values)


# ============================================================================
# SINGLETON INSTANCE
# ============================================================================
_config_instance: Optional[HarvestConfig] = None


def get_config() -> HarvestConfig:
    """
    Get the global HarvestConfig, reading the environment on first use.

    Returns:
        HarvestConfig singleton
    """
    global _config_instance

    if _config_instance is None:
        _config_instance = HarvestConfig.from_env()
        logger.debug(f"Configuration loaded: {_config_instance.to_dict()}")

    return _config_instance


def set_config(config: HarvestConfig) -> None:
    """Install an explicit configuration (used by the CLI after parsing flags)."""
    global _config_instance
    _config_instance = config


def reset_config() -> None:
    """Forget the cached configuration."""
    global _config_instance
    _config_instance = None
