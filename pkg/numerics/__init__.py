# adsharvest Numerics Package
# Special functions and one-dimensional quadrature kernels

from .specialfun import (
    erf,
    erfc,
    bessel_i0,
    bessel_k0,
    bessel_i0e,
    bessel_k0e,
)

from .quadrature import (
    Tolerance,
    QuadResult,
    tanh_sinh,
    gaussian_oscillatory,
    pv_periodic_poles,
    gaussian_cutoff,
    gaussian_tail,
    gaussian_truncation_index,
)

__all__ = [
    # Special functions
    "erf",
    "erfc",
    "bessel_i0",
    "bessel_k0",
    "bessel_i0e",
    "bessel_k0e",
    # Quadrature
    "Tolerance",
    "QuadResult",
    "tanh_sinh",
    "gaussian_oscillatory",
    "pv_periodic_poles",
    "gaussian_cutoff",
    "gaussian_tail",
    "gaussian_truncation_index",
]
