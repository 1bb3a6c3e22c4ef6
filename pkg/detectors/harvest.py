"""
adsharvest Harvesting
=====================
Assembles P_A, P_B and X into the concurrence of the final two-detector
state; the single entry point for "evaluate this detector pair".

At order lambda^2 the concurrence is 2 max(0, |X| - sqrt(P_A P_B)).
"""

import math
import logging
from dataclasses import dataclass, asdict
from typing import Any, Dict, Optional, Union

from common.errors import InvalidParameter
from geometry import BoundaryCondition, LengthLike
from numerics.quadrature import Tolerance, QuadResult
from .static import StaticPair, pair_transition_probabilities, matrix_element_x_static_estimate
from .circular import (
    CircularPair,
    transition_probability_circular_estimate,
    matrix_element_x_circular_estimate,
)


logger = logging.getLogger("adsharvest.harvest")

PairConfig = Union[StaticPair, CircularPair]
TRAJECTORY_KINDS = ("static", "circular")


# ============================================================================
# RESULT TYPE
# ============================================================================
@dataclass
class HarvestResult:
    """
    Per-lambda~^2 outputs of one detector pair.

    clamp_flag is set when the concurrence is zero because
    |X| <= sqrt(P_A P_B); its error estimate is then 0.
    """
    p_a: float
    p_b: float
    x: complex
    concurrence: float = 0.0
    err_p_a: float = 0.0
    err_p_b: float = 0.0
    err_x: float = 0.0
    err_concurrence: float = 0.0
    clamp_flag: bool = False

    def __post_init__(self):
        self.x = complex(self.x)
        self.concurrence, self.err_concurrence, self.clamp_flag = _concurrence_with_error(
            self.p_a, self.p_b, self.x, self.err_p_a, self.err_p_b, self.err_x)

    @property
    def abs_x(self) -> float:
        return abs(self.x)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        x = data.pop("x")
        data.update({"re_x": x.real, "im_x": x.imag, "abs_x": abs(x)})
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "HarvestResult":
        values = dict(data)
        if "x" not in values:
            values["x"] = complex(values.get("re_x", 0.0), values.get("im_x", 0.0))
        return cls(**{k: v for k, v in values.items() if k in cls.__dataclass_fields__})


# ============================================================================
# CONCURRENCE
# ============================================================================
def concurrence(p_a: float, p_b: float, x: complex) -> float:
    """
    Concurrence 2 max(0, |X| - sqrt(P_A P_B)) per lambda~^2.

    Example:
        >>> concurrence(0.25, 0.25, 0.5)
        0.5
    """
    if p_a < 0 or p_b < 0:
        raise InvalidParameter(f"transition probabilities must be non-negative, got {p_a}, {p_b}")
    return 2.0 * max(0.0, abs(x) - math.sqrt(p_a * p_b))


def _concurrence_with_error(p_a, p_b, x, err_a, err_b, err_x):
    value = concurrence(p_a, p_b, x)
    if value == 0.0:
        return 0.0, 0.0, True
    noise = math.sqrt(p_a * p_b)
    if noise > 0:
        err_noise = 0.5 * (err_a * p_b + err_b * p_a) / noise
    else:
        err_noise = math.sqrt((p_a + err_a) * (p_b + err_b))
    return value, 2.0 * (err_x + err_noise), False


def _non_negative(result: QuadResult, label: str) -> QuadResult:
    """Round a probability that is negative within its error estimate up to 0."""
    value = float(result.value)
    if value >= 0:
        return result
    if -value <= result.abs_error_estimate + 1e-14:
        logger.debug(f"{label}={value:.3e} within error of zero; using 0")
        return QuadResult(0.0, result.abs_error_estimate, result.evaluations)
    raise InvalidParameter(f"{label} evaluated negative ({value:.6e}) beyond its error estimate")


# ============================================================================
# PAIR EVALUATION
# ============================================================================
def evaluate_pair(config: PairConfig, tol: Optional[Tolerance] = None) -> HarvestResult:
    """
    Evaluate P_A, P_B, X and the concurrence of a static or circular pair.

    Args:
        config: StaticPair or CircularPair
        tol: Quadrature tolerance

    Returns:
        HarvestResult with per-field error estimates

    Raises:
        DegenerateConfiguration: coincident detectors
        NonConvergence: from the core evaluators
    """
    tol = tol or Tolerance()
    if isinstance(config, StaticPair):
        p_a, p_b = pair_transition_probabilities(config, tol)
        x = matrix_element_x_static_estimate(config, tol)
    elif isinstance(config, CircularPair):
        p_a = transition_probability_circular_estimate(config.gap, config.ell, config.zeta, tol)
        p_b = p_a
        x = matrix_element_x_circular_estimate(config, tol)
    else:
        raise InvalidParameter(f"unsupported pair configuration: {type(config).__name__}")

    p_a = _non_negative(p_a, "P_A")
    p_b = _non_negative(p_b, "P_B")
    return HarvestResult(
        p_a=float(p_a.value),
        p_b=float(p_b.value),
        x=complex(x.value),
        err_p_a=p_a.abs_error_estimate,
        err_p_b=p_b.abs_error_estimate,
        err_x=x.abs_error_estimate,
    )


def build_pair(kind: str, gap: float, ell: LengthLike, d_origin: float, separation: float,
               zeta=BoundaryCondition.TRANSPARENT, t0: float = 0.0) -> PairConfig:
    """Build a pair from proper distances: A at d_origin, B `separation` further out."""
    if kind == "static":
        return StaticPair.from_distances(gap, ell, d_origin, separation, zeta, t0)
    if kind == "circular":
        return CircularPair.from_distances(gap, ell, d_origin, separation, zeta, t0)
    raise InvalidParameter(f"unknown trajectory kind {kind!r}; expected one of {TRAJECTORY_KINDS}")


@dataclass
class TrajectoryComparison:
    """Static and circular pairs sharing every proper-distance parameter."""
    static: HarvestResult
    circular: HarvestResult

    @property
    def delta_concurrence(self) -> float:
        return self.circular.concurrence - self.static.concurrence

    def to_dict(self) -> Dict[str, Any]:
        return {
            "static": self.static.to_dict(),
            "circular": self.circular.to_dict(),
            "delta_concurrence": self.delta_concurrence,
        }


def compare_trajectories(gap: float, ell: LengthLike, d_origin: float, separation: float,
                         zeta=BoundaryCondition.TRANSPARENT, t0: float = 0.0,
                         tol: Optional[Tolerance] = None) -> TrajectoryComparison:
    """Concurrence of circular minus static pairs at the same proper distances."""
    static = evaluate_pair(build_pair("static", gap, ell, d_origin, separation, zeta, t0), tol)
    circular = evaluate_pair(build_pair("circular", gap, ell, d_origin, separation, zeta, t0), tol)
    comparison = TrajectoryComparison(static, circular)
    logger.debug(f"compare_trajectories: ell={float(ell):.4g} d={separation:.4g} "
                 f"delta_C={comparison.delta_concurrence:.6g}")
    return comparison
