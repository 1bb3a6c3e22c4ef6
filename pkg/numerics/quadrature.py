"""
adsharvest Quadrature Kernels
=============================
One-dimensional integration rules used by every evaluator.

Kernels:
- tanh_sinh: double-exponential rule with level-by-level step halving,
  tolerant of inverse-square-root endpoint singularities. Integrands can
  ask for the exact distances to both endpoints.
- gaussian_oscillatory: e^{-a y^2} * oscillator(beta y) * f(y) on [0, inf),
  truncated where the Gaussian tail drops below tolerance.
- pv_periodic_poles: Cauchy principal value of f(y)/kernel(y) on [0, inf)
  for a kernel with simple poles on a periodic lattice, one symmetric
  window per pole.

All integrands are called with numpy arrays and must be vectorised.
"""

import math
import logging
from functools import lru_cache
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np

from common.errors import InvalidParameter, NonConvergence, PoleOnBoundary
from .specialfun import erfc


logger = logging.getLogger("adsharvest.quadrature")

Number = Union[float, complex]
Integrand = Callable[..., np.ndarray]

HALF_PI = 0.5 * math.pi
T_MAX = 4.0            # tanh-sinh abscissae beyond |t| = 4 carry weights below 1e-35
MIN_LEVELS = 3
PAIR_MIN = 1e-4        # paired PV integrand is even in u; held constant below this
MAX_WINDOWS = 100_000
PANEL_PERIODS = 4      # oscillation periods per gaussian_oscillatory panel


# ============================================================================
# RESULT TYPES
# ============================================================================
@dataclass(frozen=True)
class Tolerance:
    """Target accuracy for a quadrature call."""
    rel: float = 1e-10
    abs: float = 1e-14
    max_levels: int = 12

    def __post_init__(self):
        if not (self.rel > 0 and self.abs > 0):
            raise InvalidParameter(f"tolerances must be positive, got rel={self.rel} abs={self.abs}")
        if self.max_levels < MIN_LEVELS:
            raise InvalidParameter(f"max_levels must be at least {MIN_LEVELS}, got {self.max_levels}")

    def accepts(self, error: float, value: Number) -> bool:
        return error <= max(self.rel * abs(value), self.abs)


@dataclass(frozen=True)
class QuadResult:
    """
    Value of an integral with its error estimate and integrand-call count.

    Results add: the sum carries the summed values, the summed error
    estimates and the summed evaluation counts.
    """
    value: Number
    abs_error_estimate: float = 0.0
    evaluations: int = 0

    def __post_init__(self):
        if not self.abs_error_estimate >= 0:
            raise InvalidParameter(f"error estimate must be non-negative, got {self.abs_error_estimate}")

    def __add__(self, other: "QuadResult") -> "QuadResult":
        if isinstance(other, QuadResult):
            return QuadResult(self.value + other.value,
                              self.abs_error_estimate + other.abs_error_estimate,
                              self.evaluations + other.evaluations)
        if isinstance(other, (int, float, complex)):
            return QuadResult(self.value + other, self.abs_error_estimate, self.evaluations)
        return NotImplemented

    __radd__ = __add__

    def scaled(self, factor: Number) -> "QuadResult":
        """Multiply value and error estimate by a constant."""
        return QuadResult(self.value * factor, self.abs_error_estimate * abs(factor), self.evaluations)

    def real(self) -> "QuadResult":
        return QuadResult(float(np.real(self.value)), self.abs_error_estimate, self.evaluations)


ZERO = QuadResult(0.0, 0.0, 0)


# ============================================================================
# TANH-SINH
# ============================================================================
@lru_cache(maxsize=None)
def _unit_nodes(level: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Abscissae added at a refinement level, mapped to [-1, 1].

    Returns (t, weight, 1 + x, 1 - x); the last two are computed without
    cancellation so integrands can resolve endpoint singularities.
    """
    if level == 0:
        t = np.arange(-int(T_MAX), int(T_MAX) + 1, dtype=float)
    else:
        h = 2.0 ** -level
        odd = np.arange(1, int(T_MAX / h) + 1, 2, dtype=float)
        t = np.concatenate((-odd[::-1], odd)) * h
    w = HALF_PI * np.sinh(t)
    weight = HALF_PI * np.cosh(t) / np.cosh(w) ** 2
    from_left = 2.0 / (1.0 + np.exp(-2.0 * w))
    from_right = 2.0 / (1.0 + np.exp(2.0 * w))
    for array in (t, weight, from_left, from_right):
        array.setflags(write=False)
    return t, weight, from_left, from_right


def tanh_sinh(f: Integrand, a: float, b: float, tol: Optional[Tolerance] = None, *,
              with_offsets: bool = False, where: str = "") -> QuadResult:
    """
    Integrate f over [a, b] with the tanh-sinh rule.

    The step in the auxiliary variable is halved until two successive
    levels agree to tolerance; the difference of the last two levels is
    the reported error estimate.

    Args:
        f: Vectorised integrand. Called as f(x), or as f(x, x - a, b - x)
           when with_offsets is set
        a, b: Finite limits, either order
        tol: Target accuracy (defaults to Tolerance())
        with_offsets: Pass endpoint distances computed without cancellation
        where: Label used in NonConvergence messages

    Returns:
        QuadResult

    Raises:
        NonConvergence: if max_levels is reached or the integrand is not finite

    Example:
        >>> round(tanh_sinh(lambda x: 1.0 / np.sqrt(x), 0.0, 1.0).value, 10)
        2.0
    """
    tol = tol or Tolerance()
    if a == b:
        return ZERO
    if a > b:
        return tanh_sinh(f, b, a, tol, with_offsets=with_offsets, where=where).scaled(-1.0)

    half = 0.5 * (b - a)
    accumulated: Number = 0.0
    previous: Optional[Number] = None
    evaluations = 0
    error = math.inf

    for level in range(tol.max_levels + 1):
        t, weight, from_left, from_right = _unit_nodes(level)
        da = half * from_left
        db = half * from_right
        x = np.where(t < 0, a + da, b - db)
        if with_offsets:
            values = np.asarray(f(x, da, db))
            contribution = np.sum(weight * values)
        else:
            # Without offsets, nodes that round onto an endpoint are dropped.
            inside = (x > a) & (x < b)
            values = np.asarray(f(x[inside]))
            contribution = np.sum(weight[inside] * values)
        evaluations += values.size
        if not np.all(np.isfinite(values)):
            raise NonConvergence("integrand is not finite on the quadrature nodes", where=where)

        accumulated = accumulated + contribution
        current = accumulated * half * 2.0 ** -level
        if previous is not None:
            error = float(abs(current - previous))
            if level >= MIN_LEVELS and tol.accepts(error, current):
                return QuadResult(_scalar(current), error, evaluations)
        previous = current

    raise NonConvergence(f"tanh-sinh did not converge on [{a:.6g}, {b:.6g}] after "
                         f"{tol.max_levels} levels", where=where, estimate=error)


def _scalar(value) -> Number:
    return complex(value) if np.iscomplexobj(value) else float(value)


# ============================================================================
# GAUSSIAN TRUNCATION
# ============================================================================
def gaussian_tail(a: float, y: float) -> float:
    """Integral of e^{-a t^2} over [y, inf)."""
    root = math.sqrt(a)
    return 0.5 * math.sqrt(math.pi) / root * erfc(root * y)


def gaussian_cutoff(a: float, abs_tol: float, envelope: float = 1.0) -> float:
    """
    Smallest tabulated Y with envelope * int_Y^inf e^{-a y^2} dy < abs_tol / 10.
    """
    if not a > 0:
        raise InvalidParameter(f"Gaussian damping must be positive, got {a}")
    target = 0.1 * abs_tol
    y = math.sqrt(max(math.log(max(envelope, 1.0) / target), 0.0) / a)
    while envelope * gaussian_tail(a, y) >= target:
        y = 1.1 * y + 1e-3
    return y


def gaussian_truncation_index(a: float, spacing: float, abs_tol: float, envelope: float = 1.0) -> int:
    """
    Smallest N >= 1 with envelope * e^{-a (N * spacing)^2} < abs_tol / 10.

    Shared by lattice sums and PV window series; terms with index >= N are
    dropped.
    """
    if not (a > 0 and spacing > 0):
        raise InvalidParameter(f"need positive damping and spacing, got a={a} spacing={spacing}")
    target = 0.1 * abs_tol
    n = max(1, math.ceil(math.sqrt(max(math.log(max(envelope, 1.0) / target), 0.0) / a) / spacing))
    while envelope * math.exp(-a * (n * spacing) ** 2) >= target:
        n += 1
    return n


# ============================================================================
# GAUSSIAN-DAMPED OSCILLATORY INTEGRALS
# ============================================================================
_OSCILLATORS = {
    "cos": np.cos,
    "sin": np.sin,
    "exp": lambda x: np.exp(1j * x),
}


def gaussian_oscillatory(a_damp: float, beta_osc: float, f_slow: Integrand,
                         tol: Optional[Tolerance] = None, *, oscillator: str = "cos",
                         envelope: float = 1.0, y_max: Optional[float] = None) -> QuadResult:
    """
    Integrate e^{-a y^2} * oscillator(beta y) * f_slow(y) over [0, inf).

    The domain is cut at Y_max where envelope * (Gaussian tail) falls below
    abs/10 and split into panels a few oscillation periods wide. The
    reported error includes the tail bound.

    Args:
        a_damp: Gaussian damping a > 0
        beta_osc: Oscillation frequency beta
        f_slow: Smooth vectorised factor, bounded by `envelope` in magnitude
        tol: Target accuracy
        oscillator: "cos", "sin" or "exp" (e^{i beta y})
        envelope: Bound on |f_slow| used for the tail estimate
        y_max: Explicit cutoff overriding the Gaussian rule
    """
    if not a_damp > 0:
        raise InvalidParameter(f"gaussian_oscillatory needs a_damp > 0, got {a_damp}")
    if oscillator not in _OSCILLATORS:
        raise InvalidParameter(f"unknown oscillator: {oscillator!r}")
    tol = tol or Tolerance()
    oscillate = _OSCILLATORS[oscillator]
    cutoff = y_max if y_max is not None else gaussian_cutoff(a_damp, tol.abs, envelope)
    tail = envelope * gaussian_tail(a_damp, cutoff)

    if beta_osc:
        panel = PANEL_PERIODS * 2.0 * math.pi / abs(beta_osc)
        count = max(1, math.ceil(cutoff / panel))
    else:
        count = 1
    edges = np.linspace(0.0, cutoff, count + 1)

    def integrand(y):
        return np.exp(-a_damp * y * y) * oscillate(beta_osc * y) * f_slow(y)

    total = ZERO
    for index, (lo, hi) in enumerate(zip(edges[:-1], edges[1:])):
        total = total + tanh_sinh(integrand, float(lo), float(hi), tol,
                                  where=f"oscillatory panel {index}")
    logger.debug(f"gaussian_oscillatory: a={a_damp:.4g} beta={beta_osc:.4g} "
                 f"Y_max={cutoff:.4g} panels={count} evals={total.evaluations}")
    return QuadResult(total.value, total.abs_error_estimate + tail, total.evaluations)


# ============================================================================
# PRINCIPAL VALUE OVER A PERIODIC POLE LATTICE
# ============================================================================
def pv_periodic_poles(f_num: Integrand, pole_period: float, pole_offset: float, damping: float,
                      tol: Optional[Tolerance] = None, *, kernel: Integrand,
                      ratio: Optional[Integrand] = None, window: Optional[float] = None,
                      envelope: float = 1.0) -> QuadResult:
    """
    Principal value of int_0^inf f_num(y) / kernel(y) dy.

    kernel must have simple poles at y_n = pole_offset + n * pole_period
    (n >= 0) and be odd about each of them, as sin(y/2) and cos(y/2) are.
    Each pole gets the window [y_n - w, y_n + w]; inside it u and -u are
    paired,

        int_0^w (f(y_n + u) - f(y_n - u)) / kernel(y_n + u) du,

    so the 1/u parts cancel before quadrature. Stretches between windows
    and the region before the first window are integrated directly with
    `ratio` (defaults to f_num / kernel). Windows stop once the Gaussian
    bound e^{-damping y^2} at the window's lower edge is below tolerance.

    Args:
        f_num: Numerator, damped like envelope * e^{-damping y^2}
        pole_period: Spacing of the pole lattice
        pole_offset: Position of the first pole, > 0
        damping: Gaussian damping of the numerator
        tol: Target accuracy
        kernel: Denominator with the pole lattice
        ratio: f_num / kernel with any removable singularity handled
        window: Half-width of each pole window, 0 < w <= period / 2
        envelope: Bound on |f_num| e^{+damping y^2}

    Raises:
        PoleOnBoundary: if a pole sits at 0 or a window reaches below 0
        NonConvergence: from any window, tagged with the window index
    """
    tol = tol or Tolerance()
    half_width = 0.5 * pole_period if window is None else window
    if not (pole_period > 0 and 0 < half_width <= 0.5 * pole_period * (1 + 1e-12)):
        raise InvalidParameter(f"invalid PV window {half_width} for period {pole_period}")
    if not pole_offset > 0:
        raise PoleOnBoundary(f"pole at the integration start (offset {pole_offset})")
    start = pole_offset - half_width
    if start < -1e-12 * pole_period:
        raise PoleOnBoundary(f"first PV window [{start:.6g}, ...] reaches below 0")
    start = max(start, 0.0)

    if ratio is None:
        def ratio(y):
            return f_num(y) / kernel(y)

    cutoff = gaussian_cutoff(damping, tol.abs, envelope)
    total = ZERO
    if start > 0:
        total = total + tanh_sinh(ratio, 0.0, start, tol, where="PV lead-in")

    n = 0
    edge = start
    while edge < cutoff:
        if n >= MAX_WINDOWS:
            raise NonConvergence("PV window series did not terminate", where="PV windows")
        centre = pole_offset + n * pole_period

        def paired(u, centre=centre):
            u = np.maximum(u, PAIR_MIN)
            return (f_num(centre + u) - f_num(centre - u)) / kernel(centre + u)

        total = total + tanh_sinh(paired, 0.0, half_width, tol, where=f"PV window {n}")
        edge = centre + half_width
        if half_width < 0.5 * pole_period:
            gap_end = centre + pole_period - half_width
            total = total + tanh_sinh(ratio, edge, gap_end, tol, where=f"PV gap {n}")
            edge = gap_end
        n += 1

    tail = envelope * gaussian_tail(damping, edge)
    logger.debug(f"pv_periodic_poles: period={pole_period:.4g} offset={pole_offset:.4g} "
                 f"windows={n} cutoff={cutoff:.4g} evals={total.evaluations}")
    return QuadResult(total.value, total.abs_error_estimate + tail, total.evaluations)
