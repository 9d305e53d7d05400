"""Command line interface: run sweeps, describe or validate configs.

Exit codes: 0 on success, 2 on configuration/validation failure, 3 on a
runtime failure (I/O, unsolvable scenario at the top level).
"""

from __future__ import annotations

import argparse
import logging
import sys

from .config import load_config
from .errors import SimulationError, ValidationError
from .sweep import SweepSpec, build_jobs, preset_sweep, run_sweep

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3


def _parse_overrides(pairs: list[str]) -> dict:
    out = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise ValidationError(f"--set expects key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uavmec",
        description="UAV-over-cellular-MEC energy simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="evaluate a sweep (or a single point) and write CSV")
    run_p.add_argument("config", help="YAML config file; an empty file means all defaults")
    run_p.add_argument("--preset", choices=["fig1", "fig2", "fig3", "fig4"], help="canned sweep")
    run_p.add_argument("--axis", help="swept parameter path, e.g. deployment.lambda_c")
    run_p.add_argument("--values", help="comma-separated axis values, ascending")
    run_p.add_argument("--strategies", help="comma-separated strategies for free-form sweeps")
    run_p.add_argument("--seeds", default="0", help="comma-separated RNG seeds (default 0)")
    run_p.add_argument("--out", default="results.csv", help="output CSV path")
    run_p.add_argument("--workers", type=int, default=1, help="concurrent evaluators")
    run_p.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="PATH=VALUE", help="override a config field (repeatable)")

    desc_p = sub.add_parser("describe", help="print the fully-resolved configuration")
    desc_p.add_argument("config", help="YAML config file")
    desc_p.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="PATH=VALUE")

    val_p = sub.add_parser("validate", help="check a configuration and exit")
    val_p.add_argument("config", help="YAML config file")
    val_p.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="PATH=VALUE")
    return parser


def _make_sweep(args, cfg) -> SweepSpec:
    if args.preset:
        return preset_sweep(args.preset, cfg)
    seeds = [int(s) for s in args.seeds.split(",") if s != ""]
    strategies = (
        [s for s in args.strategies.split(",") if s != ""]
        if args.strategies
        else [cfg.data["scenario"]["strategy"]]
    )
    jobs = build_jobs(cfg, strategies)
    if args.axis:
        if not args.values:
            raise ValidationError("--axis requires --values")
        values = [float(v) for v in args.values.split(",") if v != ""]
        return SweepSpec(args.axis, values, jobs, seeds=seeds)
    return SweepSpec("none", [0.0], jobs, seeds=seeds)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config, _parse_overrides(args.overrides))
        if args.command == "describe":
            sys.stdout.write(cfg.describe())
            return EXIT_OK
        if args.command == "validate":
            cfg.to_spec()
            print(f"OK: {args.config} is a valid configuration")
            return EXIT_OK
        # run
        cfg.to_spec()  # fail fast on an invalid base config
        seeds = [int(s) for s in args.seeds.split(",") if s != ""]
        if not seeds:
            raise ValidationError("--seeds needs at least one value")
        sweep = _make_sweep(args, cfg)
        sweep.seeds = seeds
        rows, skipped = run_sweep(sweep, args.out, workers=args.workers)
        print(f"wrote {len(rows)} rows to {args.out}"
              + (f" ({len(skipped)} points skipped, see sidecar)" if skipped else ""))
        return EXIT_OK
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SimulationError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
