"""Parameter sweeps over scenarios, figure presets, and CSV emission.

A sweep evaluates a grid of (axis value x series x seed) points, where a
series is a strategy plus any preset-specific config tweaks (band,
velocity). Points whose inputs fall outside a model's validity are
skipped, logged, and written to a sidecar report next to the CSV; they
never vanish silently. Rows carry every resolved config value, so each
row can be re-evaluated to the identical energy on its own.

Output is canonical: rows are sorted by (axis value, series, seed) and
floats are rendered with repr(), so the bytes do not depend on worker
count or scheduling.
"""

from __future__ import annotations

import concurrent.futures
import logging
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .config import ResolvedConfig, parse_strategy
from .errors import SimulationError, ValidationError
from .scenario import EnergyReport, Strategy, evaluate

log = logging.getLogger(__name__)

FIXED_COLUMNS = [
    "axis",
    "axis_value",
    "series",
    "strategy",
    "band",
    "seed",
    "energy_j",
    "t_total_s",
    "t_m_s",
    "t_h_s",
    "propulsion_j",
    "compute_j",
    "communication_j",
    "r0_m",
    "energy_stderr_j",
]


@dataclass(frozen=True)
class SeriesJob:
    """One curve of a sweep: a label, a strategy, and its base config."""

    label: str
    strategy: Strategy
    config: ResolvedConfig


@dataclass
class SweepSpec:
    axis: str                      # config path or alias; "none" for a single point
    values: list
    jobs: list[SeriesJob]
    seeds: list[int] = field(default_factory=lambda: [0])
    preset: str = "-"

    def __post_init__(self):
        if not self.values:
            raise ValidationError("sweep values must be non-empty")
        if sorted(self.values) != list(self.values):
            raise ValidationError("sweep values must be sorted ascending")
        if not self.jobs:
            raise ValidationError("sweep needs at least one series")
        if not self.seeds:
            raise ValidationError("sweep needs at least one seed")
        if self.axis != "none":
            from .config import axis_template

            template = axis_template(self.axis)
            if not (template is None or isinstance(template, (int, float))) or isinstance(template, bool):
                raise ValidationError(f"sweep axis {self.axis!r} is not a numeric field")


def build_jobs(cfg: ResolvedConfig, strategies: list[str]) -> list[SeriesJob]:
    jobs = []
    for name in strategies:
        strat = parse_strategy(name)
        jobs.append(SeriesJob(label=strat.value, strategy=strat, config=cfg.copy()))
    return jobs


def _with(cfg: ResolvedConfig, **paths) -> ResolvedConfig:
    out = cfg.copy()
    for path, value in paths.items():
        out.set(path.replace("__", "."), value, source="flag")
    from .config import _fill_band_defaults  # re-fill band-dependent defaults

    _fill_band_defaults(out)
    return out


def preset_sweep(name: str, cfg: ResolvedConfig) -> SweepSpec:
    """The four canned sweeps behind the result figures.

    fig1: hover offload vs onboard across BS density, per band.
    fig2: hover vs move-and-return across BS density (mmWave).
    fig3: hover vs move-and-return across workload size at 20 m/s (mmWave).
    fig4: parallel processing vs offload benchmark across computer mass.
    """
    density_grid = [float(x) for x in np.logspace(-8, -6, 13)]
    if name == "fig1":
        jobs = [
            SeriesJob("hover_onboard", Strategy.HOVER_ONBOARD, _with(cfg, band__kind="mmwave")),
        ]
        for kind in ("sub6", "mmwave", "thz"):
            jobs.append(
                SeriesJob(
                    f"hover_offload/{kind}",
                    Strategy.HOVER_OFFLOAD,
                    _with(cfg, band__kind=kind),
                )
            )
        return SweepSpec("deployment.lambda_c", density_grid, jobs, preset=name)
    if name == "fig2":
        base = _with(cfg, band__kind="mmwave")
        jobs = [
            SeriesJob("hover_offload", Strategy.HOVER_OFFLOAD, base),
            SeriesJob("mr_offload_v10", Strategy.MR_OFFLOAD, _with(base, scenario__v_mps=10.0)),
            SeriesJob("mr_offload_v20", Strategy.MR_OFFLOAD, _with(base, scenario__v_mps=20.0)),
        ]
        return SweepSpec("deployment.lambda_c", density_grid, jobs, preset=name)
    if name == "fig3":
        base = _with(cfg, band__kind="mmwave", scenario__v_mps=20.0)
        q_grid = [float(x) for x in np.logspace(9, 11, 13)]
        jobs = [
            SeriesJob("hover_offload", Strategy.HOVER_OFFLOAD, base),
            SeriesJob("mr_offload", Strategy.MR_OFFLOAD, base),
        ]
        return SweepSpec("q_bits", q_grid, jobs, preset=name)
    if name == "fig4":
        base = _with(cfg, band__kind="mmwave", scenario__v_mps=10.0)
        mass_grid = [round(float(x), 3) for x in np.linspace(0.1, 1.5, 8)]
        jobs = [
            SeriesJob("mr_parallel", Strategy.MR_PARALLEL, base),
            SeriesJob("hover_parallel", Strategy.HOVER_PARALLEL, base),
            SeriesJob("mr_offload", Strategy.MR_OFFLOAD, base),
        ]
        return SweepSpec("mass.m_cp", mass_grid, jobs, preset=name)
    raise ValidationError(f"unknown preset {name!r}; expected fig1|fig2|fig3|fig4")


def _point_config(job: SeriesJob, axis: str, value, seed: int) -> ResolvedConfig:
    cfg = job.config.copy()
    cfg.set("scenario.strategy", job.strategy.value, source="flag")
    cfg.set("radio.rng_seed", seed, source="flag")
    if axis != "none":
        cfg.set(axis, value, source="flag")
    return cfg


def _evaluate_point(job: SeriesJob, axis: str, value, seed: int):
    cfg = _point_config(job, axis, value, seed)
    report = evaluate(cfg.to_spec())
    return cfg, report


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def _row_dict(job: SeriesJob, axis: str, value, seed: int, cfg: ResolvedConfig, rep: EnergyReport) -> dict:
    row = {
        "axis": axis,
        "axis_value": value if axis != "none" else "",
        "series": job.label,
        "strategy": job.strategy.value,
        "band": cfg.data["band"]["kind"],
        "seed": seed,
        "energy_j": rep.energy_j,
        "t_total_s": rep.t_total,
        "t_m_s": rep.t_m,
        "t_h_s": rep.t_h,
        "propulsion_j": rep.propulsion_j,
        "compute_j": rep.compute_j,
        "communication_j": rep.communication_j,
        "r0_m": rep.r0_m,
        "energy_stderr_j": rep.energy_stderr_j,
    }
    for section, keys in cfg.data.items():
        for key, val in keys.items():
            row[f"cfg_{section}_{key}"] = val
    return row


def config_columns() -> list[str]:
    from .config import DEFAULTS

    return [f"cfg_{section}_{key}" for section, keys in DEFAULTS.items() for key in keys]


def run_sweep(sweep: SweepSpec, out_path: str, workers: int = 1) -> tuple[list[dict], list[dict]]:
    """Evaluate the sweep grid and write the CSV (plus a sidecar for skips).

    Returns (rows, skipped). Output bytes are deterministic for a fixed
    sweep and seed list, independent of the worker count.
    """
    points = [
        (job, value, seed)
        for job in sweep.jobs
        for value in sweep.values
        for seed in sweep.seeds
    ]

    rows: list[dict] = []
    skipped: list[dict] = []

    def work(point):
        job, value, seed = point
        try:
            cfg, rep = _evaluate_point(job, sweep.axis, value, seed)
            return ("row", _row_dict(job, sweep.axis, value, seed, cfg, rep))
        except (ValidationError, SimulationError) as exc:
            return (
                "skip",
                {
                    "axis_value": value,
                    "series": job.label,
                    "seed": seed,
                    "error": type(exc).__name__,
                    "message": str(exc),
                },
            )

    if workers <= 1:
        outcomes = [work(p) for p in points]
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(work, points))

    for kind, payload in outcomes:
        (rows if kind == "row" else skipped).append(payload)

    def sort_key(row):
        v = row["axis_value"]
        return (float(v) if v != "" else 0.0, row["series"], row["seed"])

    rows.sort(key=sort_key)
    skipped.sort(key=lambda s: (float(s["axis_value"]) if s["axis_value"] != "" else 0.0, s["series"], s["seed"]))

    base_hash = sweep.jobs[0].config.config_hash()
    header_comment = (
        f"# uavmec v{__version__} preset={sweep.preset} axis={sweep.axis} "
        f"config_hash={base_hash} seeds={','.join(str(s) for s in sweep.seeds)}"
    )
    columns = FIXED_COLUMNS + config_columns()
    lines = [header_comment, ",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(row.get(col)) for col in columns))
    payload = "\n".join(lines) + "\n"
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(payload)

    if skipped:
        side = out_path + ".skipped.csv"
        with open(side, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("axis_value,series,seed,error,message\n")
            for s in skipped:
                msg = str(s["message"]).replace(",", ";").replace("\n", " ")
                fh.write(f"{_fmt(s['axis_value'])},{s['series']},{s['seed']},{s['error']},{msg}\n")
        for s in skipped:
            log.warning(
                "skipped point axis=%s series=%s seed=%s: %s: %s",
                s["axis_value"], s["series"], s["seed"], s["error"], s["message"],
            )
    return rows, skipped


def row_to_config(row: dict) -> ResolvedConfig:
    """Rebuild the exact per-point config from a CSV row's cfg_* fields."""
    from .config import DEFAULTS, default_config

    cfg = default_config()
    for section, keys in DEFAULTS.items():
        for key in keys:
            raw = row[f"cfg_{section}_{key}"]
            if raw == "" or raw is None:
                value = None
            else:
                template = DEFAULTS[section][key][0]
                if isinstance(template, bool):
                    value = str(raw).lower() == "true"
                elif isinstance(template, int):
                    value = int(float(raw))
                elif isinstance(template, float):
                    value = float(raw)
                elif template is None:
                    try:
                        value = float(raw)
                    except (TypeError, ValueError):
                        value = raw
                else:
                    value = raw
            cfg.data[section][key] = value
            cfg.sources[f"{section}.{key}"] = "file"
    return cfg
