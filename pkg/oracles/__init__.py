# adsharvest Oracles Package
# Closed-form references and the brute-force double-integral oracle

from .closed_form import (
    FlatPairConfig,
    flat_transition_probability,
    flat_matrix_element_x,
    flat_concurrence,
    perturbative_coefficients,
    perturbative_transition_probability,
)

from .brute_force import (
    SpacetimePoint,
    WightmanEvaluator,
    Trajectory,
    BrutePair,
    BruteGrid,
    OracleResult,
    wightman,
    extrapolate,
    transition_probability,
    matrix_element_x,
    matrix_element_c,
    evaluator_for,
)

__all__ = [
    # Closed forms
    "FlatPairConfig",
    "flat_transition_probability",
    "flat_matrix_element_x",
    "flat_concurrence",
    "perturbative_coefficients",
    "perturbative_transition_probability",
    # Brute-force oracle
    "SpacetimePoint",
    "WightmanEvaluator",
    "Trajectory",
    "BrutePair",
    "BruteGrid",
    "OracleResult",
    "wightman",
    "extrapolate",
    "transition_probability",
    "matrix_element_x",
    "matrix_element_c",
    "evaluator_for",
]
