"""
adsharvest Brute-Force Oracle
=============================
Direct numerical evaluation of P_D, X and C from the Wightman function,
independent of the branch-cut reductions used by the detectors package.

Method:
- The field two-point function is evaluated on the embedding-space
  distance with the regulator Delta t -> Delta t - i eps
- The centre-of-mass time u is integrated with Gauss-Legendre nodes over
  the switching support, the time difference s with scipy's adaptive quad
  broken at every light-cone crossing
- The regulated values for a decreasing eps sequence are fitted by a
  polynomial in eps and extrapolated to eps = 0

Trajectories are stationary, so the two-point factor depends only on the
coordinate-time difference and is evaluated once per s.

Slow; used by tests and the oracle-check command.
"""

import math
import logging
import warnings
from functools import lru_cache
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, optimize

from common.errors import InvalidParameter, ExtrapolationUnstable
from geometry import AdsLength, BoundaryCondition


logger = logging.getLogger("adsharvest.oracle")

WIGHTMAN_MODES = ("ads", "flat")
TRAJECTORY_KINDS = ("static", "circular")
DEFAULT_EPSILONS = (10 ** -2.5, 1e-3, 10 ** -3.5, 1e-4)


# ============================================================================
# DOMAIN TYPES
# ============================================================================
@dataclass(frozen=True)
class SpacetimePoint:
    """Coordinates (t, r, phi) in units of sigma; r is R/sigma, not r/ell."""
    t: Any
    r: float
    phi: Any = 0.0


@dataclass(frozen=True)
class WightmanEvaluator:
    """
    Regulated vacuum two-point function.

    In "ads" mode ell is required and zeta selects the boundary condition;
    in "flat" mode ell and zeta are ignored and the plane is described by
    polar coordinates (r, phi).
    """
    ell: Optional[AdsLength] = None
    zeta: BoundaryCondition = BoundaryCondition.TRANSPARENT
    epsilon: float = 1e-3
    mode: str = "ads"

    def __post_init__(self):
        if self.mode not in WIGHTMAN_MODES:
            raise InvalidParameter(f"unknown Wightman mode {self.mode!r}; expected one of {WIGHTMAN_MODES}")
        if not (math.isfinite(self.epsilon) and self.epsilon > 0):
            raise InvalidParameter(f"regulator epsilon must be positive, got {self.epsilon}")
        object.__setattr__(self, "zeta", BoundaryCondition.from_name(self.zeta))
        if self.mode == "ads":
            if self.ell is None:
                raise InvalidParameter("ads mode needs an AdS length")
            if not isinstance(self.ell, AdsLength):
                object.__setattr__(self, "ell", AdsLength(float(self.ell)))

    @classmethod
    def flat(cls, epsilon: float = 1e-3) -> "WightmanEvaluator":
        return cls(None, BoundaryCondition.TRANSPARENT, epsilon, "flat")

    def with_epsilon(self, epsilon: float) -> "WightmanEvaluator":
        return replace(self, epsilon=epsilon)


@dataclass(frozen=True)
class Trajectory:
    """
    A stationary worldline.

    static: fixed radius R, t = tau/gamma with gamma = sqrt(1 + R^2/ell^2).
    circular: geodesic at radius R, t = tau and phi = t/ell.
    With ell = None the trajectory lives in flat space and must be static.
    """
    kind: str
    radius: float
    ell: Optional[float] = None

    def __post_init__(self):
        if self.kind not in TRAJECTORY_KINDS:
            raise InvalidParameter(f"unknown trajectory kind {self.kind!r}; expected one of {TRAJECTORY_KINDS}")
        if not (math.isfinite(self.radius) and self.radius >= 0):
            raise InvalidParameter(f"radius must be non-negative and finite, got {self.radius}")
        if self.ell is not None:
            object.__setattr__(self, "ell", float(self.ell))
        elif self.kind == "circular":
            raise InvalidParameter("circular geodesics need an AdS length")

    @property
    def gamma(self) -> float:
        """dtau/dt."""
        if self.kind == "static" and self.ell is not None:
            return math.hypot(self.radius / self.ell, 1.0)
        return 1.0

    def point(self, t) -> SpacetimePoint:
        phi = t / self.ell if self.kind == "circular" else 0.0
        return SpacetimePoint(t, self.radius, phi)

    def at_proper_time(self, tau) -> SpacetimePoint:
        return self.point(tau / self.gamma)


@dataclass(frozen=True)
class BrutePair:
    """
    Two trajectories with a shared gap. Detector A is switched on around
    coordinate time -t0/2 and detector B around +t0/2.
    """
    trajectory_a: Trajectory
    trajectory_b: Trajectory
    gap_omega_sigma: float
    t0_over_sigma: float = 0.0

    @property
    def centre_a(self) -> float:
        return -0.5 * self.t0_over_sigma

    @property
    def centre_b(self) -> float:
        return 0.5 * self.t0_over_sigma

    def swapped(self) -> "BrutePair":
        return BrutePair(self.trajectory_b, self.trajectory_a, self.gap_omega_sigma, -self.t0_over_sigma)

    @classmethod
    def flat(cls, gap: float, separation: float, t0: float = 0.0) -> "BrutePair":
        return cls(Trajectory("static", 0.0), Trajectory("static", float(separation)), gap, t0)

    @classmethod
    def from_config(cls, config) -> "BrutePair":
        """Mirror a detectors.StaticPair or detectors.CircularPair."""
        from detectors import StaticPair, CircularPair

        ell = float(config.ell)
        if isinstance(config, StaticPair):
            r_a = config.detector_a.position.radius(ell)
            r_b = config.detector_b.position.radius(ell)
            kind = "static"
        elif isinstance(config, CircularPair):
            r_a, r_b = config.r_a.radius(ell), config.r_b.radius(ell)
            kind = "circular"
        else:
            raise InvalidParameter(f"unsupported pair configuration: {type(config).__name__}")
        return cls(Trajectory(kind, r_a, ell), Trajectory(kind, r_b, ell), config.gap, config.t0_over_sigma)


@dataclass(frozen=True)
class BruteGrid:
    """
    Quadrature and extrapolation controls.

    epsilons are in units of sigma and are visited in the given order, which
    must be decreasing. fit_powers are the powers of eps in the
    extrapolation model besides the constant.
    """
    epsilons: Tuple[float, ...] = DEFAULT_EPSILONS
    fit_powers: Tuple[float, ...] = (1.0, 2.0)
    inner_nodes: int = 96
    tail: float = 8.5
    scan_points: int = 4001
    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    limit: int = 2000

    def __post_init__(self):
        eps = tuple(float(e) for e in self.epsilons)
        object.__setattr__(self, "epsilons", eps)
        object.__setattr__(self, "fit_powers", tuple(float(p) for p in self.fit_powers))
        if any(not e > 0 for e in eps):
            raise InvalidParameter("every regulator value must be positive")
        if any(b >= a for a, b in zip(eps, eps[1:])):
            raise InvalidParameter("the regulator sequence must be strictly decreasing")
        if len(eps) < len(self.fit_powers) + 2:
            raise InvalidParameter(
                f"need at least {len(self.fit_powers) + 2} regulator values for a {len(self.fit_powers)}-term fit")
        if self.inner_nodes < 8 or self.scan_points < 16:
            raise InvalidParameter("inner_nodes and scan_points are too small")


@dataclass
class OracleResult:
    """Extrapolated value with its error and the regulated sequence."""
    value: complex
    error: float
    epsilons: List[float] = field(default_factory=list)
    values: List[complex] = field(default_factory=list)
    fit_residual: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        value = complex(self.value)
        return {
            "re_value": value.real,
            "im_value": value.imag,
            "error": self.error,
            "fit_residual": self.fit_residual,
            "epsilons": list(self.epsilons),
            "values": [[complex(v).real, complex(v).imag] for v in self.values],
        }


# ============================================================================
# WIGHTMAN FUNCTION
# ============================================================================
def _sheet_sign(dt, ell):
    # The square root continues onto the next sheet each time |Re Delta t|/ell
    # passes an odd multiple of pi.
    crossings = np.floor((np.abs(dt) / ell + math.pi) / (2.0 * math.pi))
    return 1.0 - 2.0 * np.mod(crossings, 2.0)


def _embedding_sigma(x: SpacetimePoint, x_prime: SpacetimePoint, ell: float, eps: float):
    rho = np.arcsinh(np.asarray(x.r, dtype=float) / ell)
    rho_p = np.arcsinh(np.asarray(x_prime.r, dtype=float) / ell)
    dt = np.asarray(x.t, dtype=float) - np.asarray(x_prime.t, dtype=float)
    dphi = np.asarray(x.phi, dtype=float) - np.asarray(x_prime.phi, dtype=float)
    y = (dt - 1j * eps) / ell if eps else dt / ell
    return -1.0 + np.cosh(rho) * np.cosh(rho_p) * np.cos(y) - np.sinh(rho) * np.sinh(rho_p) * np.cos(dphi)


def _flat_interval(x: SpacetimePoint, x_prime: SpacetimePoint, eps: float):
    r, r_p = float(x.r), float(x_prime.r)
    dphi = np.asarray(x.phi, dtype=float) - np.asarray(x_prime.phi, dtype=float)
    dt = np.asarray(x.t, dtype=float) - np.asarray(x_prime.t, dtype=float)
    d2 = r * r + r_p * r_p - 2.0 * r * r_p * np.cos(dphi)
    return d2 - (dt - 1j * eps) ** 2 if eps else d2 - dt * dt


def wightman(x: SpacetimePoint, x_prime: SpacetimePoint, ev: WightmanEvaluator):
    """
    W(x, x') with Delta t = t - t' replaced by Delta t - i eps.

    Args:
        x, x_prime: Points in (t, r, phi); t may be an array
        ev: Evaluator carrying ell, zeta, eps and mode

    Returns:
        complex, or a complex array when the times are arrays
    """
    if ev.mode == "flat":
        value = 1.0 / (4.0 * math.pi * np.sqrt(_flat_interval(x, x_prime, ev.epsilon)))
    else:
        ell = float(ev.ell)
        sigma = _embedding_sigma(x, x_prime, ell, ev.epsilon)
        dt = np.asarray(x.t, dtype=float) - np.asarray(x_prime.t, dtype=float)
        value = 1.0 / np.sqrt(sigma)
        if ev.zeta.zeta:
            value = value - ev.zeta.zeta / np.sqrt(sigma + 2.0)
        value = _sheet_sign(dt, ell) * value / (4.0 * math.pi * math.sqrt(2.0) * ell)
    if np.ndim(value) == 0:
        return complex(value)
    return value


# ============================================================================
# DOUBLE INTEGRAL
# ============================================================================
@lru_cache(maxsize=16)
def _legendre(n: int):
    return np.polynomial.legendre.leggauss(n)


def _light_cone_points(first: Trajectory, second: Trajectory, ev: WightmanEvaluator,
                       lower: float, upper: float, grid: BruteGrid) -> List[float]:
    """Breakpoints in s where the unregulated two-point function is singular."""
    origin = second.point(0.0)

    if ev.mode == "flat":
        def interval(s):
            return _flat_interval(first.point(s), origin, 0.0)
        candidates = [0.0]
        shifts = (0.0,)
    else:
        ell = float(ev.ell)

        def interval(s):
            return _embedding_sigma(first.point(s), origin, ell, 0.0)
        # sigma touches zero without changing sign at multiples of pi ell
        k_lo, k_hi = math.ceil(lower / (math.pi * ell)), math.floor(upper / (math.pi * ell))
        candidates = [k * math.pi * ell for k in range(k_lo, k_hi + 1)]
        shifts = (0.0, 2.0) if ev.zeta.zeta else (0.0,)

    scan = np.linspace(lower, upper, grid.scan_points)
    for shift in shifts:
        values = np.real(interval(scan)) + shift
        flips = np.nonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0)[0]
        for i in flips:
            root = optimize.brentq(lambda s: float(np.real(interval(s))) + shift, scan[i], scan[i + 1],
                                   xtol=1e-14, rtol=4 * np.finfo(float).eps)
            candidates.append(root)
    margin = 1e-12 * max(1.0, upper - lower)
    return sorted({c for c in candidates if lower + margin < c < upper - margin})


def _ordered_integral(first: Trajectory, centre_1: float, phase_1: float,
                      second: Trajectory, centre_2: float, phase_2: float,
                      gap: float, ev: WightmanEvaluator, grid: BruteGrid,
                      s_min: float = -math.inf) -> Tuple[complex, float]:
    """
    int ds int du g1 g2 chi_1(u) chi_2(u - s) exp(-i gap (p1 g1 u + p2 g2 (u - s))) W(x1(u), x2(u - s))

    where u is the coordinate time of the first detector and u - s that of
    the second; chi_k is the Gaussian switching centred on centre_k.
    """
    g1, g2 = first.gamma, second.gamma
    nodes, weights = _legendre(grid.inner_nodes)
    half = grid.tail / g1
    u = centre_1 + half * nodes
    w = half * weights
    chi_1 = np.exp(-0.5 * (g1 * (u - centre_1)) ** 2) * np.exp(-1j * gap * phase_1 * g1 * u)

    reach = grid.tail * (1.0 / g1 + 1.0 / g2)
    lower = max(s_min, centre_1 - centre_2 - reach)
    upper = centre_1 - centre_2 + reach
    if lower >= upper:
        return 0j, 0.0
    origin = second.point(0.0)

    @lru_cache(maxsize=8192)
    def integrand(s: float) -> complex:
        t2 = u - s
        chi_2 = np.exp(-0.5 * (g2 * (t2 - centre_2)) ** 2 - 1j * gap * phase_2 * g2 * t2)
        inner = np.dot(w, chi_1 * chi_2)
        return complex(g1 * g2 * inner * wightman(first.point(s), origin, ev))

    points = _light_cone_points(first, second, ev, lower, upper, grid)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        value, error = integrate.quad(integrand, lower, upper, points=points or None,
                                      epsabs=grid.abs_tol, epsrel=grid.rel_tol,
                                      limit=grid.limit, complex_func=True)
    for warning in caught:
        logger.debug(f"quad on [{lower:.4g}, {upper:.4g}] eps={ev.epsilon:.3g}: {warning.message}")
    return complex(value), abs(error)


# ============================================================================
# EXTRAPOLATION
# ============================================================================
def extrapolate(epsilons: Sequence[float], values: Sequence[complex], errors: Sequence[float],
                powers: Sequence[float] = (1.0, 2.0), abs_tol: float = 1e-13) -> OracleResult:
    """
    Least-squares fit v(eps) = v0 + sum_p c_p eps^p and return v0.

    Raises:
        ExtrapolationUnstable: when |v(eps) - v0| grows as eps shrinks by
            more than the noise floor
    """
    eps = np.asarray(epsilons, dtype=float)
    vals = np.asarray(values, dtype=complex)
    design = np.column_stack([np.ones_like(eps)] + [eps ** p for p in powers]).astype(complex)
    coefficients, *_ = np.linalg.lstsq(design, vals, rcond=None)
    v0 = complex(coefficients[0])
    residual = float(np.max(np.abs(design @ coefficients - vals)))
    quad_error = float(max(errors)) if len(errors) else 0.0

    floor = 10.0 * (residual + quad_error) + abs_tol
    distance = np.abs(vals - v0)
    for k in range(1, len(distance)):
        if distance[k] > distance[k - 1] + floor:
            raise ExtrapolationUnstable(
                f"regulated values move away from the limit at eps={eps[k]:.3g}: "
                f"|v - v0| {distance[k - 1]:.3e} -> {distance[k]:.3e}")
    return OracleResult(v0, max(residual, quad_error), list(eps), list(vals), residual)


def _regulated(evaluate, ev: WightmanEvaluator, grid: BruteGrid, label: str) -> OracleResult:
    values, errors = [], []
    for eps in grid.epsilons:
        value, error = evaluate(ev.with_epsilon(eps))
        logger.debug(f"{label} eps={eps:.3g}: {value:.12g} (+/- {error:.2e})")
        values.append(value)
        errors.append(error)
    result = extrapolate(grid.epsilons, values, errors, grid.fit_powers, grid.abs_tol)
    logger.info(f"{label}: {result.value:.12g} +/- {result.error:.2e}")
    return result


# ============================================================================
# PUBLIC OPERATIONS
# ============================================================================
def transition_probability(trajectory: Trajectory, gap: float, ev: WightmanEvaluator,
                           grid: Optional[BruteGrid] = None, centre: float = 0.0) -> OracleResult:
    """
    P_D / lambda~^2 of one detector switched on around coordinate time `centre`.

    The regulated imaginary part is discarded; the limit is real.
    """
    grid = grid or BruteGrid()

    def evaluate(regulated: WightmanEvaluator):
        value, error = _ordered_integral(trajectory, centre, 1.0, trajectory, centre, -1.0,
                                         gap, regulated, grid)
        return complex(value.real, 0.0), error

    result = _regulated(evaluate, ev, grid, f"P[{trajectory.kind} R={trajectory.radius:.4g}]")
    result.value = complex(result.value).real
    return result


def matrix_element_x(pair: BrutePair, ev: WightmanEvaluator, grid: Optional[BruteGrid] = None) -> OracleResult:
    """
    X / lambda~^2 with the time-ordered two-point function: the later
    detector always takes the first argument of W.
    """
    grid = grid or BruteGrid()
    a, b, gap = pair.trajectory_a, pair.trajectory_b, pair.gap_omega_sigma

    def evaluate(regulated: WightmanEvaluator):
        a_later, err_a = _ordered_integral(a, pair.centre_a, 1.0, b, pair.centre_b, 1.0,
                                           gap, regulated, grid, s_min=0.0)
        b_later, err_b = _ordered_integral(b, pair.centre_b, 1.0, a, pair.centre_a, 1.0,
                                           gap, regulated, grid, s_min=0.0)
        return -(a_later + b_later), err_a + err_b

    return _regulated(evaluate, ev, grid, "X")


def matrix_element_c(pair: BrutePair, ev: WightmanEvaluator, grid: Optional[BruteGrid] = None,
                     swap: bool = False) -> OracleResult:
    """
    C / lambda~^2, no time ordering. swap=True evaluates C with the roles
    of A and B exchanged, which is the complex conjugate.
    """
    grid = grid or BruteGrid()
    first, centre_1 = pair.trajectory_a, pair.centre_a
    second, centre_2 = pair.trajectory_b, pair.centre_b
    if swap:
        first, centre_1, second, centre_2 = second, centre_2, first, centre_1

    def evaluate(regulated: WightmanEvaluator):
        return _ordered_integral(first, centre_1, 1.0, second, centre_2, -1.0,
                                 pair.gap_omega_sigma, regulated, grid)

    return _regulated(evaluate, ev, grid, "C" + ("[swapped]" if swap else ""))


def evaluator_for(config, epsilon: float = DEFAULT_EPSILONS[0]) -> WightmanEvaluator:
    """AdS evaluator matching a StaticPair or CircularPair."""
    return WightmanEvaluator(config.ell, config.zeta, epsilon, "ads")
