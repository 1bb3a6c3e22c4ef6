"""
adsharvest Run Tracker Plugin
=============================
Observability for sweeps and CLI runs.

Tracks:
- Points evaluated and failed, per scenario
- Wall time per scenario
- Oracle checks run and passed

Metrics can be persisted to a JSON file and reloaded by the next run.
"""

import os
import json
import logging
from typing import Dict, Optional
from datetime import datetime
from dataclasses import dataclass, field, asdict


logger = logging.getLogger("adsharvest.tracker")


# ============================================================================
# METRICS DATA STRUCTURES
# ============================================================================
@dataclass
class ScenarioMetrics:
    """Counters for one sweep scenario."""
    points: int = 0
    failures: int = 0
    wall_time_s: float = 0.0

    @property
    def mean_time_s(self) -> float:
        return self.wall_time_s / self.points if self.points else 0.0


@dataclass
class RunMetrics:
    """Aggregated counters across runs."""
    total_points: int = 0
    total_failures: int = 0
    total_wall_time_s: float = 0.0
    oracle_checks: int = 0
    oracle_passed: int = 0
    scenarios: Dict[str, ScenarioMetrics] = field(default_factory=dict)
    first_recorded: str = ""
    last_updated: str = ""

    def to_dict(self) -> Dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict) -> "RunMetrics":
        values = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        values["scenarios"] = {name: ScenarioMetrics(**counts)
                               for name, counts in values.get("scenarios", {}).items()}
        return cls(**values)


# ============================================================================
# RUN TRACKER PLUGIN
# ============================================================================
class RunTracker:
    """
    Collects per-point metrics from the sweep engine and the CLI.

    Usage:
        tracker = RunTracker(persist_path="metrics.json")
        tracker.record_point("static-harvest", ok=True, wall_time=0.12)
        print(tracker.get_summary())
    """

    def __init__(self, persist_path: Optional[str] = None):
        """
        Args:
            persist_path: JSON file to load from and save to; None keeps
                metrics in memory only
        """
        self.persist_path = persist_path
        now = datetime.now().isoformat()
        self.metrics = RunMetrics(first_recorded=now, last_updated=now)
        self._load_metrics()

    # ========================================================================
    # RECORDING
    # ========================================================================
    def record_point(self, scenario: str, ok: bool, wall_time: float = 0.0) -> None:
        """Count one evaluated grid point."""
        entry = self.metrics.scenarios.setdefault(scenario, ScenarioMetrics())
        entry.points += 1
        entry.wall_time_s += wall_time
        self.metrics.total_points += 1
        self.metrics.total_wall_time_s += wall_time
        if not ok:
            entry.failures += 1
            self.metrics.total_failures += 1
        self.metrics.last_updated = datetime.now().isoformat()
        logger.debug(f"{scenario}: point {'ok' if ok else 'FAILED'} in {wall_time * 1000:.0f}ms")

    def record_oracle_check(self, passed: bool) -> None:
        self.metrics.oracle_checks += 1
        if passed:
            self.metrics.oracle_passed += 1

    # ========================================================================
    # METRICS ACCESS
    # ========================================================================
    def get_metrics(self) -> RunMetrics:
        return self.metrics

    def get_summary(self) -> Dict:
        """Counters rounded for display."""
        m = self.metrics
        return {
            "points": m.total_points,
            "failures": m.total_failures,
            "wall_time_s": round(m.total_wall_time_s, 3),
            "oracle_checks": f"{m.oracle_passed}/{m.oracle_checks}",
            "scenarios": {
                name: {
                    "points": s.points,
                    "failures": s.failures,
                    "mean_time_ms": round(1000 * s.mean_time_s, 1),
                }
                for name, s in sorted(m.scenarios.items())
            },
            "tracking_since": m.first_recorded,
        }

    # ========================================================================
    # PERSISTENCE
    # ========================================================================
    def save(self) -> None:
        """Write metrics to persist_path, if set."""
        if not self.persist_path:
            return
        try:
            with open(self.persist_path, "w") as f:
                json.dump(self.metrics.to_dict(), f, indent=2)
        except OSError as e:
            logger.warning(f"Failed to persist metrics: {e}")

    def _load_metrics(self) -> None:
        if not self.persist_path or not os.path.exists(self.persist_path):
            return
        try:
            with open(self.persist_path, "r") as f:
                self.metrics = RunMetrics.from_dict(json.load(f))
            logger.info(f"Loaded persisted metrics: {self.metrics.total_points} points so far")
        except (OSError, ValueError, TypeError) as e:
            logger.warning(f"Failed to load metrics: {e}")

    def reset(self) -> None:
        now = datetime.now().isoformat()
        self.metrics = RunMetrics(first_recorded=now, last_updated=now)
        self.save()


# ============================================================================
# SINGLETON INSTANCE
# ============================================================================
_run_tracker_instance: Optional[RunTracker] = None


def get_run_tracker(persist_path: Optional[str] = None) -> RunTracker:
    """
    Get the global RunTracker, created on first use.

    Args:
        persist_path: Used only when the tracker is created
    """
    global _run_tracker_instance

    if _run_tracker_instance is None:
        _run_tracker_instance = RunTracker(persist_path)

    return _run_tracker_instance


def reset_run_tracker() -> None:
    global _run_tracker_instance
    _run_tracker_instance = None
