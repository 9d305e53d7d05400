#!/usr/bin/env python3
"""Render sweep CSVs into the four result charts.

Reads the CSV files written by `uavmec run` (any CSV with the same
header works) and draws one line per series. This tool only consumes the
CSV; it never touches the simulator. Charts are regenerated artifacts:
numbers are accepted on the CSV, not on pixels.

Usage:
    python plot.py --fig {1,2,3,4} --csv results.csv --out chart.png
    python plot.py --csv results.csv --x axis_value --y energy_j --out chart.png
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

log = logging.getLogger("plot")

# Axis labels for known columns; swept-parameter labels key off the
# CSV's "axis" column value.
COLUMN_LABELS = {
    "energy_j": "total energy [J]",
    "t_total_s": "completion time [s]",
    "t_m_s": "moving time [s]",
    "t_h_s": "hovering time [s]",
    "axis_value": "swept value",
}
AXIS_LABELS = {
    "deployment.lambda_c": "BS density [1/m^2]",
    "q_bits": "workload size [bit]",
    "mass.m_cp": "onboard computer mass [kg]",
    "compute.c_cp": "processing complexity [cycles/bit]",
    "v": "velocity [m/s]",
}


class MissingColumnError(ValueError):
    """A referenced CSV column does not exist; the message names it."""


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    out_path: str
    x_col: str = "axis_value"
    y_col: str = "energy_j"
    series_col: str = "series"
    log_x: bool = False
    log_y: bool = False
    title: str = ""


@dataclass
class RenderResult:
    out_path: str
    series_points: dict = field(default_factory=dict)
    width_px: int = 0
    height_px: int = 0


# Documented axis scales: density and workload sweeps use a log x-axis,
# the computer-mass sweep is linear; energy is always log.
FIG_PRESETS = {
    1: dict(log_x=True, log_y=True, title="Offload vs onboard energy across BS density"),
    2: dict(log_x=True, log_y=True, title="Hover vs move-and-return across BS density"),
    3: dict(log_x=True, log_y=True, title="Hover vs move-and-return across workload size"),
    4: dict(log_x=False, log_y=True, title="Parallel processing across computer mass"),
}


def read_rows(csv_path: str) -> list[dict]:
    """Load CSV rows, skipping '#' comment lines before the header."""
    with open(csv_path, "r", encoding="utf-8") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    rows = list(csv.DictReader(lines))
    if not rows:
        raise ValueError(f"{csv_path}: no data rows")
    return rows


def render(spec: FigureSpec) -> RenderResult:
    """Draw one line per series and write the image file."""
    rows = read_rows(spec.csv_path)
    header = rows[0].keys()
    for col in (spec.x_col, spec.y_col, spec.series_col):
        if col not in header:
            raise MissingColumnError(f"column {col!r} not found in {spec.csv_path}")

    series: dict[str, list[tuple[float, float]]] = {}
    for row in rows:
        try:
            x = float(row[spec.x_col])
            y = float(row[spec.y_col])
        except (TypeError, ValueError):
            continue  # rows without a numeric point (e.g. singleton runs)
        series.setdefault(row[spec.series_col], []).append((x, y))

    fig, ax = plt.subplots(figsize=(7.0, 5.0), dpi=120)
    result = RenderResult(out_path=spec.out_path)
    for label in sorted(series):
        points = sorted(series[label])
        if not points:
            log.warning("series %r has no plottable points; skipped", label)
            continue
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        style = "o-" if len(points) > 1 else "o"
        ax.plot(xs, ys, style, label=label, markersize=4)
        result.series_points[label] = len(points)

    if not result.series_points:
        log.warning("nothing to plot from %s", spec.csv_path)

    if spec.log_x:
        ax.set_xscale("log")
    if spec.log_y:
        ax.set_yscale("log")
    axis_name = rows[0].get("axis", "")
    ax.set_xlabel(AXIS_LABELS.get(axis_name, COLUMN_LABELS.get(spec.x_col, spec.x_col)))
    ax.set_ylabel(COLUMN_LABELS.get(spec.y_col, spec.y_col))
    if spec.title:
        ax.set_title(spec.title)
    ax.grid(True, which="both", alpha=0.3)
    if result.series_points:
        ax.legend()
    fig.tight_layout()
    fig.savefig(spec.out_path)
    width, height = fig.canvas.get_width_height()
    result.width_px, result.height_px = int(width * 1), int(height * 1)
    plt.close(fig)
    return result


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--fig", type=int, choices=[1, 2, 3, 4], help="preset figure style")
    parser.add_argument("--csv", required=True, help="input sweep CSV")
    parser.add_argument("--out", required=True, help="output image path (png/pdf/svg)")
    parser.add_argument("--x", default="axis_value")
    parser.add_argument("--y", default="energy_j")
    parser.add_argument("--series", default="series")
    parser.add_argument("--log-x", action="store_true")
    parser.add_argument("--log-y", action="store_true")
    args = parser.parse_args(argv)

    preset = FIG_PRESETS.get(args.fig, {})
    spec = FigureSpec(
        csv_path=args.csv,
        out_path=args.out,
        x_col=args.x,
        y_col=args.y,
        series_col=args.series,
        log_x=preset.get("log_x", args.log_x),
        log_y=preset.get("log_y", args.log_y),
        title=preset.get("title", ""),
    )
    try:
        result = render(spec)
    except (MissingColumnError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {result.out_path} ({result.width_px}x{result.height_px} px, "
          f"{len(result.series_points)} series)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
