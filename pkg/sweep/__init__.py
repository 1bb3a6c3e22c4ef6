# adsharvest Sweep Package
# Parameter scans, record files and plot output

from .records import (
    SCENARIOS,
    AXIS_NAMES,
    CSV_COLUMNS,
    SweepAxis,
    SweepPoint,
    SweepSpec,
    SweepRecord,
    RecordWriter,
    parse_zetas,
    format_csv,
    completed_rows,
    read_records,
    load_records,
)

from .engine import (
    SweepTask,
    PRESETS,
    evaluate_point,
    run_sweep,
    collect_sweep,
    get_preset,
)

from .plotting import (
    emit_plot_script,
    render_png,
)

__all__ = [
    # Records
    "SCENARIOS",
    "AXIS_NAMES",
    "CSV_COLUMNS",
    "SweepAxis",
    "SweepPoint",
    "SweepSpec",
    "SweepRecord",
    "RecordWriter",
    "parse_zetas",
    "format_csv",
    "completed_rows",
    "read_records",
    "load_records",
    # Engine
    "SweepTask",
    "PRESETS",
    "evaluate_point",
    "run_sweep",
    "collect_sweep",
    "get_preset",
    # Plots
    "emit_plot_script",
    "render_png",
]
