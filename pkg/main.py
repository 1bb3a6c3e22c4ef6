#!/usr/bin/env python
"""
adsharvest - Entanglement Harvesting in AdS3
============================================
Command-line entry point.

Usage:
    python main.py transition --ell 1 --gap 0.01 --zeta all
    python main.py harvest --kind static --ell 2.5 --gap 3.6 --separation 5 --zeta dirichlet
    python main.py sweep --preset separability-island --out island.csv --plot
    python main.py sweep --scenario static-harvest --axis separation=3:9:61 \
        --fixed ell=2.5 --fixed gap=3.6 --zeta dirichlet --out island.csv
    python main.py oracle-check --ell 1 --gap 1 --zeta all

Exit status is 0 only when every row has status=ok.
"""

import os
import sys
import argparse
from dataclasses import replace
from typing import Dict, List, Optional

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

# Load environment variables
from dotenv import load_dotenv
load_dotenv()

import logging

from common.config import HarvestConfig, set_config
from common.errors import HarvestError
from plugins.run_tracker import get_run_tracker
from sweep import (
    SCENARIOS,
    PRESETS,
    SweepAxis,
    SweepPoint,
    SweepRecord,
    SweepSpec,
    SweepTask,
    evaluate_point,
    run_sweep,
    load_records,
    get_preset,
    parse_zetas,
    format_csv,
    emit_plot_script,
    render_png,
)
from sweep.records import format_json_lines, DEFAULT_FIXED


logger = logging.getLogger("adsharvest.cli")

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


# ============================================================================
# CLI INTERFACE
# ============================================================================
class AdsHarvestCLI:
    """Runs one subcommand against a HarvestConfig."""

    def __init__(self, config: HarvestConfig, metrics: bool = False):
        """
        Args:
            config: Tolerances, worker count and output format
            metrics: Print the run-tracker summary at the end
        """
        self.config = config
        self.show_metrics = metrics
        self.tracker = get_run_tracker(config.metrics_path)

    # ========================================================================
    # SINGLE-POINT COMMANDS
    # ========================================================================
    def _point_records(self, scenario: str, params: Dict[str, float], zetas) -> List[SweepRecord]:
        merged = dict(DEFAULT_FIXED)
        merged.update(params)
        records = []
        for index, zeta in enumerate(zetas):
            point = SweepPoint(index, scenario, zeta, tuple(sorted(merged.items())))
            task = SweepTask(point, self.config.rel_tol, self.config.abs_tol, self.config.max_levels)
            record = evaluate_point(task)
            self.tracker.record_point(scenario, record.ok, record.wall_time)
            if scenario == "oracle-compare":
                self.tracker.record_oracle_check(record.ok)
            records.append(record)
        return records

    def transition(self, args) -> List[SweepRecord]:
        params = {"ell": args.ell, "gap": args.gap, "origin_offset": args.d_origin}
        return self._point_records("static-P", params, parse_zetas(args.zeta))

    def harvest(self, args) -> List[SweepRecord]:
        scenario = {"static": "static-harvest", "circular": "circular-harvest",
                    "compare": "circular-vs-static"}[args.kind]
        params = {"ell": args.ell, "gap": args.gap, "separation": args.separation,
                  "delay": args.delay, "origin_offset": args.d_origin}
        return self._point_records(scenario, params, parse_zetas(args.zeta))

    def oracle_check(self, args) -> List[SweepRecord]:
        params = {"ell": args.ell, "gap": args.gap, "origin_offset": args.d_origin}
        records = self._point_records("oracle-compare", params, parse_zetas(args.zeta))
        passed = sum(r.ok for r in records)
        logger.info(f"oracle-check: {passed}/{len(records)} agree")
        return records

    # ========================================================================
    # SWEEP
    # ========================================================================
    def build_spec(self, args) -> SweepSpec:
        if args.preset:
            spec = get_preset(args.preset)
            if args.zeta:
                spec = replace(spec, zetas=parse_zetas(args.zeta))
        else:
            if not args.scenario or not args.axis:
                raise HarvestError("sweep needs --preset, or --scenario with at least one --axis")
            fixed = {}
            for item in args.fixed or []:
                name, _, value = item.partition("=")
                fixed[name.strip()] = float(value)
            spec = SweepSpec(args.scenario, tuple(SweepAxis.parse(a) for a in args.axis), fixed,
                             parse_zetas(args.zeta or "transparent"), name=args.name or "")
        return replace(spec, rel_tol=self.config.rel_tol, abs_tol=self.config.abs_tol,
                       max_levels=self.config.max_levels)

    def sweep(self, args) -> List[SweepRecord]:
        spec = self.build_spec(args)
        records = list(run_sweep(spec, out_path=args.out, output_format=self.config.output_format,
                                 jobs=self.config.jobs, resume=args.resume, tracker=self.tracker))
        if args.out and (args.plot or args.png):
            stem = os.path.splitext(args.out)[0]
            # a resumed file also holds the rows of the interrupted run
            plotted = load_records(args.out, self.config.output_format) if args.resume else records
            if args.plot and self.config.output_format == "csv":
                emit_plot_script(spec, plotted, args.out, stem + ".gp")
            if args.png:
                render_png(spec, plotted, stem + ".png")
        return records

    # ========================================================================
    # OUTPUT
    # ========================================================================
    def emit(self, records: List[SweepRecord], out: Optional[str], written: bool = False) -> None:
        if not written:
            if self.config.output_format == "json":
                text = format_json_lines(records)
            else:
                text = format_csv(records)
            if out:
                with open(out, "w", encoding="utf-8") as handle:
                    handle.write(text)
            else:
                sys.stdout.write(text)
        if self.show_metrics:
            import json
            print(json.dumps(self.tracker.get_summary(), indent=2), file=sys.stderr)
        self.tracker.save()


# ============================================================================
# ARGUMENT PARSING
# ============================================================================
def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--zeta", default=None,
                        help="dirichlet | transparent | neumann | all (comma lists allowed)")
    parser.add_argument("--out", default=None, help="Output file (default: stdout)")
    parser.add_argument("--format", dest="output_format", choices=("csv", "json"), default=None,
                        help="Record format")
    parser.add_argument("--tol", type=float, default=None, help="Relative quadrature tolerance")
    parser.add_argument("--jobs", type=int, default=None, help="Worker processes for sweeps")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--metrics", action="store_true", help="Print run metrics to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="adsharvest - entanglement harvesting with detectors in AdS3"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    transition = commands.add_parser("transition", help="Transition probability of a static detector")
    transition.add_argument("--ell", type=float, required=True, help="AdS length ell/sigma")
    transition.add_argument("--gap", type=float, required=True, help="Energy gap Omega*sigma")
    transition.add_argument("--d-origin", type=float, default=0.0, help="Proper distance from the origin")
    _add_common(transition)

    harvest = commands.add_parser("harvest", help="P_A, P_B, X and concurrence of a detector pair")
    harvest.add_argument("--kind", choices=("static", "circular", "compare"), default="static")
    harvest.add_argument("--ell", type=float, required=True)
    harvest.add_argument("--gap", type=float, required=True)
    harvest.add_argument("--separation", type=float, required=True, help="Proper separation d/sigma")
    harvest.add_argument("--delay", type=float, default=0.0, help="Switching delay t0/sigma")
    harvest.add_argument("--d-origin", type=float, default=0.0, help="Proper distance of A from the origin")
    _add_common(harvest)

    sweep = commands.add_parser("sweep", help="1-D or 2-D parameter scan")
    sweep.add_argument("--preset", choices=sorted(PRESETS), default=None)
    sweep.add_argument("--scenario", choices=SCENARIOS, default=None)
    sweep.add_argument("--axis", action="append", help="name=min:max:count[:log]; repeat for 2-D")
    sweep.add_argument("--fixed", action="append", help="name=value for an unscanned parameter")
    sweep.add_argument("--name", default=None, help="Label for logs and plots")
    sweep.add_argument("--resume", action="store_true", help="Continue a partial --out file")
    sweep.add_argument("--plot", action="store_true", help="Write a gnuplot script next to --out")
    sweep.add_argument("--png", action="store_true", help="Render a PNG next to --out")
    _add_common(sweep)

    oracle = commands.add_parser("oracle-check", help="Compare P_D with the brute-force oracle")
    oracle.add_argument("--ell", type=float, required=True)
    oracle.add_argument("--gap", type=float, required=True)
    oracle.add_argument("--d-origin", type=float, default=0.0)
    _add_common(oracle)

    return parser


def configure(args) -> HarvestConfig:
    """Environment defaults, overridden by flags."""
    config = HarvestConfig.from_env()
    overrides = {}
    if args.tol is not None:
        overrides["rel_tol"] = args.tol
    if args.jobs is not None:
        overrides["jobs"] = args.jobs
    if args.output_format is not None:
        overrides["output_format"] = args.output_format
    if args.log_level is not None:
        overrides["log_level"] = args.log_level
    if overrides:
        config = HarvestConfig.from_dict({**config.to_dict(), **overrides})
    set_config(config)
    return config


# ============================================================================
# MAIN
# ============================================================================
def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)
    try:
        config = configure(args)
    except HarvestError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    logging.basicConfig(level=getattr(logging, config.log_level, logging.INFO), format=LOG_FORMAT)
    if args.command != "sweep" and args.zeta is None:
        args.zeta = "transparent"

    cli = AdsHarvestCLI(config, metrics=args.metrics)
    handlers = {
        "transition": cli.transition,
        "harvest": cli.harvest,
        "sweep": cli.sweep,
        "oracle-check": cli.oracle_check,
    }
    try:
        records = handlers[args.command](args)
    except HarvestError as e:
        logger.error(str(e))
        return 2

    cli.emit(records, args.out, written=args.command == "sweep" and bool(args.out))
    failed = sum(not r.ok for r in records)
    if failed:
        logger.warning(f"{failed} of {len(records)} rows failed")
    return 0 if failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
