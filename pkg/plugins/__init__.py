# adsharvest Plugins Package
# Run metrics and observability

from .run_tracker import (
    RunTracker,
    RunMetrics,
    ScenarioMetrics,
    get_run_tracker,
    reset_run_tracker,
)

__all__ = [
    "RunTracker",
    "RunMetrics",
    "ScenarioMetrics",
    "get_run_tracker",
    "reset_run_tracker",
]
