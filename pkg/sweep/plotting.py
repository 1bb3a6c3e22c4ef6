"""
adsharvest Plot Output
======================
Turns a finished sweep into a gnuplot script (always) or a PNG (when
matplotlib is available).

One-axis sweeps become line plots, two-axis sweeps density plots. Points
where the concurrence is clamped to zero are drawn in black.
"""

import os
import logging
from typing import Iterable, List, Optional

from common.errors import InvalidParameter
from .records import AXIS_COLUMNS, CSV_COLUMNS, SweepRecord, SweepSpec, records_frame


logger = logging.getLogger("adsharvest.plot")

PLOT_KINDS = ("line", "density")


def _kind_for(spec: SweepSpec, kind: Optional[str]) -> str:
    expected = "line" if len(spec.axes) == 1 else "density"
    kind = kind or expected
    if kind not in PLOT_KINDS:
        raise InvalidParameter(f"unknown plot kind {kind!r}; expected one of {PLOT_KINDS}")
    if kind != expected:
        raise InvalidParameter(f"a {kind} plot needs {1 if kind == 'line' else 2} axes, "
                               f"the sweep has {len(spec.axes)}")
    return kind


def _col(name: str) -> int:
    return CSV_COLUMNS.index(name) + 1


def emit_plot_script(spec: SweepSpec, records: Iterable[SweepRecord], csv_path: str,
                     script_path: str, kind: Optional[str] = None,
                     column: str = "concurrence") -> str:
    """
    Write a gnuplot script that plots `column` of the CSV at csv_path.

    Args:
        spec: The sweep that produced the records
        records: The records; used to decide whether clamped points exist
        csv_path: CSV file, referenced relative to the script's directory
        script_path: Where to write the script
        kind: "line" or "density"; defaults to the one matching the axis count
        column: CSV column to plot

    Returns:
        The script path

    Raises:
        InvalidParameter: kind does not match the number of axes, or column unknown
    """
    kind = _kind_for(spec, kind)
    if column not in CSV_COLUMNS:
        raise InvalidParameter(f"unknown column {column!r}")
    records = list(records)
    clamped = any(r.clamp_flag for r in records)
    data = os.path.relpath(os.path.abspath(csv_path), os.path.dirname(os.path.abspath(script_path)))
    title = spec.name or spec.scenario
    image = os.path.splitext(os.path.basename(script_path))[0] + ".png"
    zetas = sorted({z.zeta for z in spec.zetas}, reverse=True)
    zcol, vcol, flag = _col("zeta"), _col(column), _col("clamp_flag")
    xcol = _col(AXIS_COLUMNS[spec.axes[0].name])

    lines: List[str] = [
        f"# {title}: {column}",
        "set datafile separator ','",
        "set terminal pngcairo size 900,640",
        f"set output '{image}'",
        f"set xlabel '{AXIS_COLUMNS[spec.axes[0].name]}'",
    ]
    if spec.axes[0].spacing == "log":
        lines.append("set logscale x")

    if kind == "line":
        lines.append(f"set ylabel '{column}'")
        plots = []
        for z in zetas:
            plots.append(f"'{data}' every ::1 using {xcol}:(${zcol}=={z} ? ${vcol} : 1/0) "
                         f"with linespoints title 'zeta={z}'")
            if clamped:
                plots.append(f"'{data}' every ::1 using {xcol}:(${zcol}=={z} && strcol({flag}) eq 'True' "
                             f"? ${vcol} : 1/0) with points pt 7 lc rgb 'black' notitle")
        lines.append("plot " + ", \\\n     ".join(plots))
    else:
        ycol = _col(AXIS_COLUMNS[spec.axes[1].name])
        lines.append(f"set ylabel '{AXIS_COLUMNS[spec.axes[1].name]}'")
        if spec.axes[1].spacing == "log":
            lines.append("set logscale y")
        lines += ["set view map", f"set cblabel '{column}'", "unset key"]
        if len(zetas) > 1:
            lines.append(f"set multiplot layout 1,{len(zetas)}")
        for z in zetas:
            lines.append(f"set title 'zeta={z}'")
            layer = (f"splot '{data}' every ::1 using {xcol}:{ycol}:(${zcol}=={z} ? ${vcol} : 1/0) "
                     f"with points pt 5 ps 1 palette")
            if clamped:
                layer += (f", \\\n      '{data}' every ::1 using {xcol}:{ycol}:"
                          f"(${zcol}=={z} && strcol({flag}) eq 'True' ? 0 : 1/0) "
                          f"with points pt 7 ps 0.5 lc rgb 'black'")
            lines.append(layer)
        if len(zetas) > 1:
            lines.append("unset multiplot")

    with open(script_path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")
    logger.info(f"Wrote {kind} plot script {script_path}")
    return script_path


def render_png(spec: SweepSpec, records: Iterable[SweepRecord], png_path: str,
               column: str = "concurrence") -> str:
    """Render the sweep with matplotlib; clamped cells are black."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import numpy as np

    kind = _kind_for(spec, None)
    frame = records_frame(records)
    zetas = sorted(frame["zeta"].unique(), reverse=True)
    xname = AXIS_COLUMNS[spec.axes[0].name]

    if kind == "line":
        fig, ax = plt.subplots(figsize=(8, 5))
        for z in zetas:
            rows = frame[frame["zeta"] == z]
            ax.plot(rows[xname], rows[column], marker=".", label=f"zeta={z}")
            dead = rows[rows["clamp_flag"].astype(bool)]
            ax.plot(dead[xname], dead[column], "k.", linestyle="none")
        ax.set_ylabel(column)
        ax.legend()
        if spec.axes[0].spacing == "log":
            ax.set_xscale("log")
        axes = [ax]
    else:
        yname = AXIS_COLUMNS[spec.axes[1].name]
        fig, axes = plt.subplots(1, len(zetas), figsize=(6 * len(zetas), 5), squeeze=False)
        axes = list(axes[0])
        cmap = plt.get_cmap("viridis").copy()
        cmap.set_bad("black")
        for ax, z in zip(axes, zetas):
            rows = frame[frame["zeta"] == z]
            grid = rows.pivot_table(index=yname, columns=xname, values=column, aggfunc="first")
            clamp = rows.pivot_table(index=yname, columns=xname, values="clamp_flag", aggfunc="first")
            values = np.ma.masked_where(clamp.to_numpy(dtype=bool), grid.to_numpy(dtype=float))
            mesh = ax.pcolormesh(grid.columns, grid.index, values, cmap=cmap, shading="nearest")
            fig.colorbar(mesh, ax=ax, label=column)
            ax.set_title(f"zeta={z}")
            ax.set_ylabel(yname)
    for ax in axes:
        ax.set_xlabel(xname)
    fig.suptitle(spec.name or spec.scenario)
    fig.tight_layout()
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    logger.info(f"Rendered {png_path}")
    return png_path
