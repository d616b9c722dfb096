"""Command line entry point: ``qbattery run|sweep|report``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .dynamics import NumericalError
from .runner import (
    SWEEP_AXES,
    ConfigError,
    emit_csv,
    emit_report,
    emit_summary_csv,
    load_config,
    peak_ordering_report,
    peaks_from_series,
    read_csv,
    run,
    run_sweep,
)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_IO = 0, 1, 2, 3


class _Peaks:
    def __init__(self, series):
        self.peaks, self.first_peaks = peaks_from_series(series)


def _load(args):
    config = load_config(args.config)
    overrides = {}
    if args.dt is not None:
        overrides["dt"] = args.dt
    if args.tmax is not None:
        overrides["t_max"] = args.tmax
    if args.normalize:
        overrides["normalize_output"] = True
    return config.with_(**overrides) if overrides else config


def _print_ordering(order, out=None):
    out = sys.stdout if out is None else out
    print("global max: " + " < ".join(f"{m}@{t:.4g}" for m, t in order.global_max), file=out)
    print("first local max: " + " < ".join(f"{m}@{t:.4g}" for m, t in order.first_local), file=out)


def cmd_run(args) -> int:
    config = _load(args)
    record = run(config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    emit_csv(record, out / f"{record.scenario_id}.csv")
    emit_report(record, out / f"{record.scenario_id}_report.csv")
    print(f"{record.scenario_id}: {len(record.times)} points, scale {record.scale:.6g}, "
          f"route discrepancy {record.route_discrepancy:.3g}")
    _print_ordering(peak_ordering_report(record))
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = _load(args)
    values = [v.strip() for v in args.values.split(",") if v.strip()]
    if args.axis in ("kappa", "N"):
        values = [int(v) for v in values]
    else:
        values = [float(v) for v in values]
    result = run_sweep(config, args.axis, values, workers=args.workers)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for record in result.records:
        emit_csv(record, out / f"{record.scenario_id}.csv")
    emit_summary_csv(result, out / f"{config.name}_{args.axis}_summary.csv")
    for note in result.warnings:
        print(f"warning: {note}", file=sys.stderr)
    for row in result.summary:
        print(f"{args.axis}={row['value']}: dE_max={row['dE_max']:.6g} Pi_max={row['Pi_max']:.6g}")
    return EXIT_OK


def cmd_report(args) -> int:
    series = read_csv(args.record)
    _print_ordering(peak_ordering_report(_Peaks(series)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qbattery", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def overrides(p):
        p.add_argument("--config", required=True, help="key=value scenario file")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--dt", type=float, help="override the time step")
        p.add_argument("--tmax", type=float, help="override the final time")
        p.add_argument("--normalize", action="store_true", help="max-normalize CSV columns")

    p_run = sub.add_parser("run", help="run one scenario")
    overrides(p_run)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a scenario for several values of one parameter")
    overrides(p_sweep)
    p_sweep.add_argument("--axis", required=True, help="one of " + ", ".join(SWEEP_AXES))
    p_sweep.add_argument("--values", required=True, help="comma separated values")
    p_sweep.add_argument("--workers", type=int, default=1, help="parallel runs")
    p_sweep.set_defaults(func=cmd_sweep)

    p_report = sub.add_parser("report", help="peak ordering of an emitted trace CSV")
    p_report.add_argument("--record", required=True, help="trace CSV written by run")
    p_report.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
