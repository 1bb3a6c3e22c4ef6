"""
adsharvest Sweep Engine
=======================
Runs a SweepSpec point by point, optionally across a process pool, and
streams the records in grid order.

Each point is independent. Results come back through an ordered map, so
the output file does not depend on which worker finished first; failures
are caught per point and written as status=error rows.
"""

import time
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional

from common.config import get_config
from common.errors import HarvestError, InvalidParameter
from geometry import BoundaryCondition
from numerics.quadrature import Tolerance
from detectors import (
    StaticDetector,
    evaluate_pair,
    build_pair,
    compare_trajectories,
    transition_probability_static_estimate,
)
from oracles import (
    FlatPairConfig,
    flat_transition_probability,
    flat_matrix_element_x,
    perturbative_transition_probability,
)
from .records import (
    SweepAxis,
    SweepPoint,
    SweepRecord,
    SweepSpec,
    RecordWriter,
    STATUS_ERROR,
)


logger = logging.getLogger("adsharvest.sweep")

DEFAULT_FLUSH_EVERY = 16
ORACLE_AGREEMENT = 1e-6


# ============================================================================
# POINT EVALUATION
# ============================================================================
@dataclass(frozen=True)
class SweepTask:
    """A grid point together with the tolerance; picklable for the pool."""
    point: SweepPoint
    rel_tol: float
    abs_tol: float
    max_levels: int

    @property
    def tolerance(self) -> Tolerance:
        return Tolerance(rel=self.rel_tol, abs=self.abs_tol, max_levels=self.max_levels)


def _static_p(record: SweepRecord, point: SweepPoint, tol: Tolerance) -> None:
    detector = StaticDetector.at_proper_distance(point.get("gap"), point.get("ell"), point.get("origin_offset"))
    estimate = transition_probability_static_estimate(detector, point.get("ell"), point.zeta, tol)
    record.p_a = record.p_b = float(estimate.value)
    record.err_p_a = record.err_p_b = estimate.abs_error_estimate


def _harvest(kind: str) -> Callable:
    def run(record: SweepRecord, point: SweepPoint, tol: Tolerance) -> None:
        pair = build_pair(kind, point.get("gap"), point.get("ell"), point.get("origin_offset"),
                          point.get("separation"), point.zeta, point.get("delay"))
        record.fill_harvest(evaluate_pair(pair, tol))
    return run


def _circular_vs_static(record: SweepRecord, point: SweepPoint, tol: Tolerance) -> None:
    comparison = compare_trajectories(point.get("gap"), point.get("ell"), point.get("origin_offset"),
                                      point.get("separation"), point.zeta, point.get("delay"), tol)
    record.fill_harvest(comparison.circular)
    record.delta_concurrence = comparison.delta_concurrence


def _flat(record: SweepRecord, point: SweepPoint, tol: Tolerance) -> None:
    from detectors.harvest import HarvestResult

    p = flat_transition_probability(point.get("gap"))
    x = flat_matrix_element_x(FlatPairConfig(point.get("gap"), point.get("separation")))
    record.fill_harvest(HarvestResult(p, p, x))


def _perturbative(record: SweepRecord, point: SweepPoint, tol: Tolerance) -> None:
    record.p_a = record.p_b = perturbative_transition_probability(
        point.get("gap"), point.get("ell"), point.zeta, point.get("origin_offset"))


def _oracle_compare(record: SweepRecord, point: SweepPoint, tol: Tolerance) -> None:
    """p_a from the static evaluator, p_b from the brute-force oracle."""
    from oracles.brute_force import Trajectory, WightmanEvaluator, transition_probability

    _static_p(record, point, tol)
    ell = point.get("ell")
    detector = StaticDetector.at_proper_distance(point.get("gap"), ell, point.get("origin_offset"))
    oracle = transition_probability(Trajectory("static", detector.position.radius(ell), ell),
                                    point.get("gap"), WightmanEvaluator(ell, point.zeta))
    record.p_b = float(oracle.value)
    record.err_p_b = oracle.error
    allowed = max(ORACLE_AGREEMENT * abs(record.p_b), 10.0 * (oracle.error + record.err_p_a))
    if abs(record.p_a - record.p_b) > allowed:
        record.status = STATUS_ERROR
        record.message = f"oracle mismatch: |dP|={abs(record.p_a - record.p_b):.3e} > {allowed:.3e}"


SCENARIO_HANDLERS: Dict[str, Callable] = {
    "static-P": _static_p,
    "static-harvest": _harvest("static"),
    "circular-harvest": _harvest("circular"),
    "circular-vs-static": _circular_vs_static,
    "flat": _flat,
    "perturbative": _perturbative,
    "oracle-compare": _oracle_compare,
}


def evaluate_point(task: SweepTask) -> SweepRecord:
    """Evaluate one grid point; never raises for numerical failures."""
    point = task.point
    record = SweepRecord.for_point(point)
    start = time.perf_counter()
    try:
        SCENARIO_HANDLERS[point.scenario](record, point, task.tolerance)
    except (HarvestError, ArithmeticError, ValueError) as e:
        record.status = STATUS_ERROR
        record.message = " ".join(f"{type(e).__name__}: {e}".split())
        logger.warning(f"point {point.index} ({point.scenario}, zeta={point.zeta.zeta}) failed: {record.message}")
    record.wall_time = time.perf_counter() - start
    return record


# ============================================================================
# SWEEP
# ============================================================================
def sweep_tasks(spec: SweepSpec) -> List[SweepTask]:
    return [SweepTask(p, spec.rel_tol, spec.abs_tol, spec.max_levels) for p in spec.points()]


def run_sweep(spec: SweepSpec, out_path: Optional[str] = None, output_format: Optional[str] = None,
              jobs: Optional[int] = None, resume: bool = False, flush_every: int = DEFAULT_FLUSH_EVERY,
              tracker=None) -> Iterator[SweepRecord]:
    """
    Evaluate every grid point of `spec` and yield the records in grid order.

    Args:
        spec: The sweep
        out_path: File to append rows to as they complete (optional)
        output_format: "csv" or "json" (JSON Lines); defaults to the configured format
        jobs: Worker processes; 1 evaluates in this process. Defaults to the configured count
        resume: Keep complete rows already in out_path and skip those points
        flush_every: Rows buffered before each write
        tracker: Optional plugins.RunTracker receiving per-point metrics

    Yields:
        SweepRecord for each point not skipped by resume
    """
    config = get_config()
    output_format = output_format or config.output_format
    jobs = config.jobs if jobs is None else jobs
    if jobs < 1:
        raise InvalidParameter(f"jobs must be at least 1, got {jobs}")
    if resume and out_path is None:
        raise InvalidParameter("--resume needs an output file")

    tasks = sweep_tasks(spec)
    writer = None
    skip = 0
    if out_path is not None:
        writer = RecordWriter(out_path, output_format)
        skip = writer.open(resume)
        if skip > len(tasks):
            raise InvalidParameter(f"{out_path} holds {skip} rows but the sweep has only {len(tasks)}")
    pending = tasks[skip:]
    label = spec.name or spec.scenario
    logger.info(f"Sweep {label}: {len(pending)} of {len(tasks)} points to evaluate with {jobs} job(s)")

    buffer: List[SweepRecord] = []
    done = 0

    def emit(record: SweepRecord):
        nonlocal done
        done += 1
        if tracker is not None:
            tracker.record_point(spec.scenario, record.ok, record.wall_time)
        if writer is not None:
            buffer.append(record)
            if len(buffer) >= flush_every:
                writer.append(buffer)
                buffer.clear()
        if done % max(1, len(pending) // 10) == 0:
            logger.info(f"Sweep {label}: {done}/{len(pending)} points")

    if jobs == 1 or len(pending) <= 1:
        for task in pending:
            record = evaluate_point(task)
            emit(record)
            yield record
    else:
        chunksize = max(1, len(pending) // (8 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # map() returns results in submission order
            for record in pool.map(evaluate_point, pending, chunksize=chunksize):
                emit(record)
                yield record

    if writer is not None and buffer:
        writer.append(buffer)
        buffer.clear()


def collect_sweep(spec: SweepSpec, **kwargs) -> List[SweepRecord]:
    """Run a sweep to completion and return all records."""
    return list(run_sweep(spec, **kwargs))


# ============================================================================
# PRESETS
# ============================================================================
def _all_zetas():
    return (BoundaryCondition.DIRICHLET, BoundaryCondition.TRANSPARENT, BoundaryCondition.NEUMANN)


PRESETS: Dict[str, SweepSpec] = {
    "transition-vs-ell": SweepSpec(
        "static-P", (SweepAxis("ell", 0.1, 10.0, 41, "log"),),
        fixed={"gap": 0.01}, zetas=_all_zetas(), name="transition-vs-ell"),
    "dirichlet-maximum": SweepSpec(
        "static-P", (SweepAxis("ell", 0.5, 0.9, 9),),
        fixed={"gap": 0.01}, zetas=(BoundaryCondition.DIRICHLET,), name="dirichlet-maximum"),
    "concurrence-vs-ell": SweepSpec(
        "static-harvest", (SweepAxis("ell", 0.2, 20.0, 41, "log"),),
        fixed={"gap": 1.0, "separation": 1.0}, zetas=_all_zetas(), name="concurrence-vs-ell"),
    "separability-island": SweepSpec(
        "static-harvest", (SweepAxis("separation", 3.0, 9.0, 61),),
        fixed={"ell": 2.5, "gap": 3.6}, zetas=(BoundaryCondition.DIRICHLET,), name="separability-island"),
    "island-map": SweepSpec(
        "static-harvest", (SweepAxis("separation", 1.0, 9.0, 41), SweepAxis("gap", 0.5, 4.0, 36)),
        fixed={"ell": 2.5}, zetas=(BoundaryCondition.DIRICHLET,), name="island-map"),
    "time-delay": SweepSpec(
        "static-harvest", (SweepAxis("separation", 0.5, 4.0, 36), SweepAxis("delay", -3.0, 3.0, 25)),
        fixed={"ell": 1.0, "gap": 2.0}, zetas=(BoundaryCondition.DIRICHLET,), name="time-delay"),
    "circular-vs-ell": SweepSpec(
        "circular-vs-static", (SweepAxis("ell", 0.2, 20.0, 41, "log"),),
        fixed={"gap": 1.0, "separation": 1.0}, zetas=_all_zetas(), name="circular-vs-ell"),
    "transition-vs-gap": SweepSpec(
        "static-P", (SweepAxis("gap", -3.0, 3.0, 61),),
        fixed={"ell": 1.0}, zetas=_all_zetas(), name="transition-vs-gap"),
    "transition-vs-position": SweepSpec(
        "static-P", (SweepAxis("origin_offset", 0.0, 3.0, 31),),
        fixed={"ell": 1.0, "gap": 0.01}, zetas=_all_zetas(), name="transition-vs-position"),
    "concurrence-vs-gap": SweepSpec(
        "static-harvest", (SweepAxis("gap", -1.0, 3.0, 41),),
        fixed={"ell": 1.0, "separation": 0.1}, zetas=_all_zetas(), name="concurrence-vs-gap"),
    "neumann-peninsula": SweepSpec(
        "circular-harvest", (SweepAxis("gap", -1.0, 3.0, 41), SweepAxis("ell", 0.1, 5.0, 50)),
        fixed={"separation": 1.0}, zetas=(BoundaryCondition.NEUMANN,), name="neumann-peninsula"),
    "circular-time-delay": SweepSpec(
        "circular-harvest", (SweepAxis("separation", 0.5, 6.0, 23), SweepAxis("delay", -8.0, 8.0, 33)),
        fixed={"ell": 1.0, "gap": 2.0}, zetas=_all_zetas(), name="circular-time-delay"),
    "circular-time-delay-large-ell": SweepSpec(
        "circular-harvest", (SweepAxis("separation", 0.5, 6.0, 23), SweepAxis("delay", -8.0, 8.0, 33)),
        fixed={"ell": 5.0, "gap": 2.0}, zetas=_all_zetas(), name="circular-time-delay-large-ell"),
    "flat-reference": SweepSpec(
        "flat", (SweepAxis("separation", 0.1, 6.0, 60),),
        fixed={"gap": 1.0}, name="flat-reference"),
}


def get_preset(name: str) -> SweepSpec:
    if name not in PRESETS:
        raise InvalidParameter(f"unknown preset {name!r}; available: {sorted(PRESETS)}")
    return PRESETS[name]
