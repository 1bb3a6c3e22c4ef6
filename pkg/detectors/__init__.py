# adsharvest Detectors Package
# Static and circular-geodesic evaluators and the concurrence assembly

from .kernels import (
    BranchCut,
    theta_lattice,
    branch_integral,
)

from .static import (
    StaticDetector,
    StaticPair,
    DetectorKernel,
    StaticKernelParams,
    detector_kernel,
    static_kernel_params,
    transition_probability_static,
    transition_probability_static_estimate,
    matrix_element_x_static,
    matrix_element_x_static_estimate,
)

from .circular import (
    CircularPair,
    CircularKernelParams,
    alpha_tilde,
    circular_kernel_params,
    transition_probability_circular,
    transition_probability_circular_direct,
    matrix_element_x_circular,
)

from .harvest import (
    HarvestResult,
    TrajectoryComparison,
    TRAJECTORY_KINDS,
    concurrence,
    evaluate_pair,
    build_pair,
    compare_trajectories,
)

__all__ = [
    # Kernels
    "BranchCut",
    "theta_lattice",
    "branch_integral",
    # Static detectors
    "StaticDetector",
    "StaticPair",
    "DetectorKernel",
    "StaticKernelParams",
    "detector_kernel",
    "static_kernel_params",
    "transition_probability_static",
    "transition_probability_static_estimate",
    "matrix_element_x_static",
    "matrix_element_x_static_estimate",
    # Circular geodesics
    "CircularPair",
    "CircularKernelParams",
    "alpha_tilde",
    "circular_kernel_params",
    "transition_probability_circular",
    "transition_probability_circular_direct",
    "matrix_element_x_circular",
    # Harvesting
    "HarvestResult",
    "TrajectoryComparison",
    "TRAJECTORY_KINDS",
    "concurrence",
    "evaluate_pair",
    "build_pair",
    "compare_trajectories",
]
