"""
adsharvest Sweep Records
========================
Sweep specifications, per-point records and their on-disk formats.

- SweepAxis / SweepSpec: 1-D or 2-D parameter grids over
  ell, gap, separation, delay and origin_offset
- SweepRecord: one row per grid point per boundary condition
- CSV (17 significant digits) and JSON Lines writers that append in
  chunks, plus the readers used by --resume
"""

import os
import json
import math
import logging
import itertools
from dataclasses import dataclass, field, asdict
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd

from common.errors import InvalidParameter
from geometry import BoundaryCondition, ALL_BOUNDARY_CONDITIONS


logger = logging.getLogger("adsharvest.sweep")

SCENARIOS = (
    "static-P",
    "static-harvest",
    "circular-harvest",
    "circular-vs-static",
    "flat",
    "perturbative",
    "oracle-compare",
)
AXIS_NAMES = ("ell", "gap", "separation", "delay", "origin_offset")
SPACINGS = ("linear", "log")
POSITIVE_AXES = ("ell", "separation")
NON_NEGATIVE_AXES = ("origin_offset",)

# axis name -> CSV column
AXIS_COLUMNS = {
    "ell": "ell_over_sigma",
    "gap": "omega_sigma",
    "separation": "d_over_sigma",
    "delay": "t0_over_sigma",
    "origin_offset": "d_origin_over_sigma",
}

DEFAULT_FIXED = {
    "ell": 1.0,
    "gap": 1.0,
    "separation": 1.0,
    "delay": 0.0,
    "origin_offset": 0.0,
}

CSV_COLUMNS = (
    "scenario", "zeta", "ell_over_sigma", "omega_sigma", "d_over_sigma", "t0_over_sigma",
    "d_origin_over_sigma", "p_a", "p_b", "re_x", "im_x", "abs_x", "concurrence", "clamp_flag",
    "err_p_a", "err_p_b", "err_x", "status", "delta_concurrence", "message",
)
FLOAT_FORMAT = "%.17g"
STATUS_OK = "ok"
STATUS_ERROR = "error"


# ============================================================================
# SPECIFICATION
# ============================================================================
@dataclass(frozen=True)
class SweepAxis:
    """One scanned parameter: `count` values from minimum to maximum."""
    name: str
    minimum: float
    maximum: float
    count: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise InvalidParameter(f"unknown axis {self.name!r}; expected one of {AXIS_NAMES}")
        if self.spacing not in SPACINGS:
            raise InvalidParameter(f"unknown spacing {self.spacing!r}; expected one of {SPACINGS}")
        if int(self.count) != self.count or self.count < 2:
            raise InvalidParameter(f"axis {self.name} needs at least 2 points, got {self.count}")
        if not (math.isfinite(self.minimum) and math.isfinite(self.maximum)):
            raise InvalidParameter(f"axis {self.name} range must be finite")
        if self.maximum < self.minimum:
            raise InvalidParameter(f"axis {self.name}: maximum {self.maximum} below minimum {self.minimum}")
        if self.name in POSITIVE_AXES and self.minimum <= 0:
            raise InvalidParameter(f"axis {self.name} must stay positive, got minimum {self.minimum}")
        if self.name in NON_NEGATIVE_AXES and self.minimum < 0:
            raise InvalidParameter(f"axis {self.name} must be non-negative, got minimum {self.minimum}")
        if self.spacing == "log" and self.minimum <= 0:
            raise InvalidParameter(f"log spacing on {self.name} needs a positive minimum")

    def values(self) -> List[float]:
        if self.spacing == "log":
            grid = np.geomspace(self.minimum, self.maximum, int(self.count))
        else:
            grid = np.linspace(self.minimum, self.maximum, int(self.count))
        return [float(v) for v in grid]

    @classmethod
    def parse(cls, text: str) -> "SweepAxis":
        """
        Parse "name=min:max:count[:log]".

        Example:
            >>> SweepAxis.parse("separation=3:9:61").count
            61
        """
        try:
            name, rest = text.split("=", 1)
            parts = rest.split(":")
            spacing = parts[3] if len(parts) > 3 else "linear"
            return cls(name.strip(), float(parts[0]), float(parts[1]), int(parts[2]), spacing)
        except (ValueError, IndexError):
            raise InvalidParameter(f"cannot parse axis {text!r}; expected name=min:max:count[:log]")


@dataclass(frozen=True)
class SweepPoint:
    """A single grid point, ready for evaluation."""
    index: int
    scenario: str
    zeta: BoundaryCondition
    params: Tuple[Tuple[str, float], ...]

    def get(self, name: str) -> float:
        return dict(self.params)[name]


@dataclass
class SweepSpec:
    """
    A parameter scan.

    Args:
        scenario: One of SCENARIOS
        axes: One or two SweepAxis objects
        fixed: Values for the parameters that are not scanned
        zetas: Boundary conditions; one record per grid point per zeta
        rel_tol / abs_tol / max_levels: Quadrature tolerance
        name: Label used in logs and plot titles
    """
    scenario: str
    axes: Tuple[SweepAxis, ...]
    fixed: Dict[str, float] = field(default_factory=dict)
    zetas: Tuple[BoundaryCondition, ...] = (BoundaryCondition.TRANSPARENT,)
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_levels: int = 12
    name: str = ""

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise InvalidParameter(f"unknown scenario {self.scenario!r}; expected one of {SCENARIOS}")
        self.axes = tuple(a if isinstance(a, SweepAxis) else SweepAxis(**a) for a in self.axes)
        if not 1 <= len(self.axes) <= 2:
            raise InvalidParameter(f"a sweep has one or two axes, got {len(self.axes)}")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise InvalidParameter(f"axis names repeat: {names}")
        unknown = set(self.fixed) - set(AXIS_NAMES)
        if unknown:
            raise InvalidParameter(f"unknown fixed parameters: {sorted(unknown)}")
        self.fixed = {k: float(v) for k, v in self.fixed.items()}
        for key in POSITIVE_AXES:
            if key in self.fixed and not self.fixed[key] > 0:
                raise InvalidParameter(f"{key} must be positive, got {self.fixed[key]}")
        self.zetas = tuple(BoundaryCondition.from_name(z) for z in self.zetas)
        if not self.zetas:
            raise InvalidParameter("at least one boundary condition is required")

    @property
    def axis_names(self) -> Tuple[str, ...]:
        return tuple(a.name for a in self.axes)

    def parameters(self, values: Dict[str, float]) -> Dict[str, float]:
        merged = dict(DEFAULT_FIXED)
        merged.update(self.fixed)
        merged.update(values)
        return merged

    def points(self) -> List[SweepPoint]:
        """Grid points in output order: zeta outermost, then the first axis."""
        grids = [a.values() for a in self.axes]
        points = []
        for zeta in self.zetas:
            for combo in itertools.product(*grids):
                params = self.parameters(dict(zip(self.axis_names, combo)))
                points.append(SweepPoint(len(points), self.scenario, zeta,
                                         tuple(sorted(params.items()))))
        return points

    def __len__(self) -> int:
        return len(self.zetas) * int(np.prod([a.count for a in self.axes]))

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["zetas"] = [z.name.lower() for z in self.zetas]
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SweepSpec":
        return cls(**{k: v for k, v in data.items() if k in cls.__dataclass_fields__})


def parse_zetas(text: str) -> Tuple[BoundaryCondition, ...]:
    """"all" or a comma-separated list of boundary-condition names."""
    if text.strip().lower() == "all":
        return ALL_BOUNDARY_CONDITIONS
    return tuple(BoundaryCondition.from_name(part) for part in text.split(","))


# ============================================================================
# RECORDS
# ============================================================================
@dataclass
class SweepRecord:
    """One output row. Fields that do not apply to a scenario are NaN."""
    scenario: str
    zeta: int
    ell_over_sigma: float
    omega_sigma: float
    d_over_sigma: float
    t0_over_sigma: float
    d_origin_over_sigma: float
    p_a: float = math.nan
    p_b: float = math.nan
    re_x: float = math.nan
    im_x: float = math.nan
    abs_x: float = math.nan
    concurrence: float = math.nan
    clamp_flag: bool = False
    err_p_a: float = math.nan
    err_p_b: float = math.nan
    err_x: float = math.nan
    status: str = STATUS_OK
    delta_concurrence: float = math.nan
    message: str = ""
    wall_time: float = 0.0  # not written; output must be reproducible

    @classmethod
    def for_point(cls, point: SweepPoint) -> "SweepRecord":
        return cls(
            scenario=point.scenario,
            zeta=point.zeta.zeta,
            ell_over_sigma=point.get("ell"),
            omega_sigma=point.get("gap"),
            d_over_sigma=point.get("separation"),
            t0_over_sigma=point.get("delay"),
            d_origin_over_sigma=point.get("origin_offset"),
        )

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK

    def fill_harvest(self, result) -> None:
        """Copy a detectors.HarvestResult into the row."""
        self.p_a, self.p_b = result.p_a, result.p_b
        self.re_x, self.im_x, self.abs_x = result.x.real, result.x.imag, abs(result.x)
        self.concurrence = result.concurrence
        self.clamp_flag = result.clamp_flag
        self.err_p_a, self.err_p_b, self.err_x = result.err_p_a, result.err_p_b, result.err_x

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        return {column: data[column] for column in CSV_COLUMNS}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SweepRecord":
        return cls(**{k: v for k, v in data.items() if k in cls.__dataclass_fields__})


# ============================================================================
# OUTPUT FORMATS
# ============================================================================
def records_frame(records: Iterable[SweepRecord]) -> pd.DataFrame:
    return pd.DataFrame([r.to_dict() for r in records], columns=list(CSV_COLUMNS))


def format_csv(records: Iterable[SweepRecord], header: bool = True) -> str:
    """CSV text with floats at 17 significant digits."""
    frame = records_frame(records)
    return frame.to_csv(index=False, header=header, float_format=FLOAT_FORMAT,
                        na_rep="nan", lineterminator="\n")


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    return value


def format_json_lines(records: Iterable[SweepRecord]) -> str:
    lines = [json.dumps({k: _json_value(v) for k, v in r.to_dict().items()}) for r in records]
    return "".join(line + "\n" for line in lines)


class RecordWriter:
    """
    Appends records to a CSV or JSON Lines file in chunks.

    Usage:
        writer = RecordWriter("out.csv", "csv")
        done = writer.open(resume=True)   # rows already on disk
        writer.append(records)
    """

    def __init__(self, path: str, output_format: str = "csv"):
        if output_format not in ("csv", "json"):
            raise InvalidParameter(f"unknown output format: {output_format}")
        self.path = path
        self.output_format = output_format
        self._header_written = False

    def open(self, resume: bool = False) -> int:
        """
        Prepare the file.

        Returns:
            Number of complete rows kept from a previous run (0 unless resuming)
        """
        if not resume or not os.path.exists(self.path):
            with open(self.path, "w", encoding="utf-8"):
                pass
            self._header_written = False
            return 0
        kept = completed_rows(self.path, self.output_format)
        self._header_written = self.output_format == "csv" and kept >= 0
        logger.info(f"Resuming {self.path}: {max(kept, 0)} rows already complete")
        return max(kept, 0)

    def append(self, records: List[SweepRecord]) -> None:
        if not records:
            return
        if self.output_format == "csv":
            text = format_csv(records, header=not self._header_written)
            self._header_written = True
        else:
            text = format_json_lines(records)
        with open(self.path, "a", encoding="utf-8") as handle:
            handle.write(text)
            handle.flush()
            os.fsync(handle.fileno())


def completed_rows(path: str, output_format: str = "csv") -> int:
    """
    Count complete rows in a partial output file and cut off anything after
    the last complete one.

    Returns:
        Row count, or -1 for a CSV file without a usable header (the file is
        then emptied)
    """
    with open(path, "r", encoding="utf-8") as handle:
        lines = handle.read().splitlines(keepends=True)

    if output_format == "csv":
        header = ",".join(CSV_COLUMNS) + "\n"
        if not lines or lines[0] != header:
            kept, count = [], -1
        else:
            body = []
            for line in lines[1:]:
                if not line.endswith("\n") or len(line.rstrip("\n").split(",")) < len(CSV_COLUMNS):
                    break
                body.append(line)
            kept, count = [header] + body, len(body)
    else:
        kept = []
        for line in lines:
            if not line.endswith("\n"):
                break
            try:
                json.loads(line)
            except ValueError:
                break
            kept.append(line)
        count = len(kept)

    with open(path, "w", encoding="utf-8") as handle:
        handle.writelines(kept)
    return count


def read_records(path: str, output_format: str = "csv") -> pd.DataFrame:
    """Load a finished sweep file as a DataFrame."""
    if output_format == "csv":
        return pd.read_csv(path, keep_default_na=True, na_values=["nan"],
                           dtype={"message": str}).fillna({"message": ""})
    return pd.read_json(path, lines=True)


def load_records(path: str, output_format: str = "csv") -> List[SweepRecord]:
    """Rebuild the SweepRecords of a sweep file, including rows from earlier runs."""
    records = []
    for row in read_records(path, output_format).to_dict("records"):
        row = {k: math.nan if v is None else v for k, v in row.items()}
        row["zeta"] = int(row["zeta"])
        clamp = row["clamp_flag"]
        row["clamp_flag"] = not (isinstance(clamp, float) and math.isnan(clamp)) and bool(clamp)
        row["message"] = row["message"] if isinstance(row.get("message"), str) else ""
        records.append(SweepRecord.from_dict(row))
    return records
