"""
rfidpy.cli
==========

Command line front end.

    rfidpy locate --target X,Y,Z [--config FILE] [flags]
    rfidpy sweep [--config FILE] [--n LIST] [--trials N] [--seed S] ...
    rfidpy dump-grid [--n N] [--placement P] [--out FILE]

Exit codes: 0 on success, 2 on configuration errors, 3 on I/O errors.

"""

import argparse
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
import logging
import os
import sys
import pandas as pd
import rfidpy
from .experiment import ExperimentConfig, noise_stream, records_to_frame
from .experiment import sweep_n
from .grid import InterpolationDomain, PlacementMode, VirtualMode
from .grid import grid_to_frame, place_virtual_tags
from .io import read_config, write_csv, write_json
from .locate import MatrixMode, localize
from .radio import Point3

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3


@dataclass(frozen=True)
class RunManifest:
    """Provenance embedded in every report.

    Re-running the embedded configuration reproduces the report; only
    ``timestamp`` changes.
    """

    command: str
    config: dict
    tool_version: str = rfidpy.__version__
    timestamp: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat()
    )

    def to_dict(self):
        return {
            "tool_version": self.tool_version,
            "command": self.command,
            "timestamp": self.timestamp,
            "seed": self.config["seed"],
            "matrix_mode": self.config["matrix_mode"],
            "virtual_mode": self.config["virtual_mode"],
            "placement_mode": self.config["placement_mode"],
            "config": self.config,
        }


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected comma separated integers, got {!r}".format(text)
        )


def _point(text):
    try:
        x, y, z = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected X,Y,Z coordinates, got {!r}".format(text)
        )
    return Point3(x, y, z)


def _format_point(p):
    return "({:g}, {:g}, {:g})".format(*p)


def resolve_config(args):
    """Merge built-in defaults, the config file and command line flags.

    Flags override file values, which override the defaults.

    Returns
    -------
    ExperimentConfig
    """
    values = read_config(args.config) if args.config else {}
    overrides = {
        "trials_per_n": getattr(args, "trials", None),
        "seed": getattr(args, "seed", None),
        "placement_mode": getattr(args, "placement", None),
        "virtual_mode": getattr(args, "virtual_mode", None),
        "matrix_mode": getattr(args, "matrix_mode", None),
        "interpolation_domain": getattr(args, "interpolation_domain", None),
    }
    n = getattr(args, "n", None)
    if n is not None:
        overrides["n_values"] = n if isinstance(n, list) else [n]
    sigma = getattr(args, "noise_sigma", None)
    if sigma is not None:
        overrides["noise"] = {"enabled": sigma > 0, "sigma_db": sigma}
    values.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig.from_dict(values)


def cmd_locate(args):
    """Locate one target and print the estimate with its vote table."""
    config = resolve_config(args)
    target = args.target
    if not config.room.contains(target, strict=True):
        raise ValueError(
            "The target {} should be strictly inside the room.".format(
                tuple(target)
            )
        )
    n = config.n_values[0]
    grid = place_virtual_tags(config.room, n, config.placement_mode)
    rng = noise_stream(config.seed, n, 0) if config.noise.enabled else None
    result = localize(
        target,
        grid,
        config.trajectory,
        config.params,
        matrix_mode=config.matrix_mode,
        virtual_mode=config.virtual_mode,
        noise=config.noise,
        rng=rng,
        domain=config.interpolation_domain,
    )

    votes = pd.DataFrame(
        {
            "position": [v.reader_position_index for v in result.votes],
            "reader": [
                _format_point(p) for p in config.trajectory.positions
            ],
            "tag_id": [v.matched_tag_id for v in result.votes],
            "tag_position": [
                _format_point(grid.position_of(v.matched_tag_id))
                for v in result.votes
            ],
            "rssi_diff_db": [v.rssi_diff_db for v in result.votes],
        }
    )
    dx, dy, dz = result.per_axis_abs_error
    print("Target:    ({:.4f}, {:.4f}, {:.4f})".format(*target))
    print(
        "Estimate:  ({:.4f}, {:.4f}, {:.4f}) tag {}".format(
            *result.estimated_position, result.estimated_tag_id
        )
    )
    print("Error:     {:.4f} m".format(result.error_m))
    print("Per axis:  x={:.4f} y={:.4f} z={:.4f} m".format(dx, dy, dz))
    print(
        "Grid:      n={} {} ({} tags)".format(
            n, grid.placement_mode.value, len(grid)
        )
    )
    print()
    print(votes.to_string(index=False))

    if args.out:
        record = {
            "manifest": RunManifest("locate", config.to_dict()).to_dict(),
            "n": n,
            "target": list(target),
            "estimated_position": list(result.estimated_position),
            "estimated_tag_id": result.estimated_tag_id,
            "error_m": result.error_m,
            "per_axis_abs_error": list(result.per_axis_abs_error),
            "votes": [asdict(v) for v in result.votes],
        }
        write_json(record, args.out)
    return EXIT_OK


def cmd_sweep(args):
    """Run a sweep over ``n`` and write the report files."""
    config = resolve_config(args)
    report = sweep_n(config, n_jobs=args.jobs)
    os.makedirs(args.out, exist_ok=True)

    manifest = RunManifest("sweep", config.to_dict())
    document = {
        "manifest": manifest.to_dict(),
        "overall": {
            "mean_error_m": report.overall_mean_error_m,
            "mae_x": report.overall_mae[0],
            "mae_y": report.overall_mae[1],
            "mae_z": report.overall_mae[2],
        },
        "rows": [asdict(row) for row in report.rows],
    }
    write_json(document, os.path.join(args.out, "report.json"))
    write_csv(report.to_frame(), os.path.join(args.out, "aggregates.csv"))
    if args.per_trial:
        write_csv(
            records_to_frame(report.records),
            os.path.join(args.out, "trials.csv"),
        )
    print(
        "Overall mean error {:.4f} m over {} trials ({} matrix)".format(
            report.overall_mean_error_m,
            len(report.records),
            config.matrix_mode.value,
        )
    )
    return EXIT_OK


def cmd_dump_grid(args):
    """Write the grid tags as CSV, to a file or to stdout."""
    config = resolve_config(args)
    grid = place_virtual_tags(
        config.room, config.n_values[0], config.placement_mode
    )
    write_csv(grid_to_frame(grid), args.out or sys.stdout)
    return EXIT_OK


def _add_config_flags(parser):
    parser.add_argument("--config", help="JSON configuration file")
    parser.add_argument(
        "--placement",
        choices=[m.value for m in PlacementMode],
        help="virtual tag placement",
    )


def _add_run_flags(parser):
    parser.add_argument("--seed", type=int, help="experiment seed")
    parser.add_argument(
        "--matrix-mode",
        choices=[m.value for m in MatrixMode],
        help="measure the reference matrix at every position or once",
    )
    parser.add_argument(
        "--virtual-mode",
        choices=[m.value for m in VirtualMode],
        help="interpolate virtual tags or evaluate them exactly",
    )
    parser.add_argument(
        "--interpolation-domain",
        choices=[m.value for m in InterpolationDomain],
        help="interpolate dBm values or linear power",
    )
    parser.add_argument(
        "--noise-sigma",
        type=float,
        help="standard deviation (dB) of RSSI noise; 0 disables it",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rfidpy",
        description="3D RFID tag localization with a single mobile reader.",
    )
    parser.add_argument(
        "--version", action="version", version=rfidpy.__version__
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="log progress (-v) or debug output (-vv) to stderr",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    locate = sub.add_parser("locate", help="locate a single target")
    locate.add_argument(
        "--target", type=_point, required=True, help="target as X,Y,Z"
    )
    locate.add_argument("--n", type=int, help="virtual tags per segment")
    locate.add_argument("--out", help="write the result as JSON")
    _add_config_flags(locate)
    _add_run_flags(locate)
    locate.set_defaults(func=cmd_locate)

    sweep = sub.add_parser("sweep", help="Monte Carlo sweep over n")
    sweep.add_argument("--n", type=_int_list, help="n values, e.g. 0,1,2")
    sweep.add_argument("--trials", type=int, help="trials per n")
    sweep.add_argument("--out", default=".", help="output directory")
    sweep.add_argument(
        "--per-trial", action="store_true", help="also write trials.csv"
    )
    sweep.add_argument(
        "--jobs", type=int, default=1, help="worker threads per n"
    )
    _add_config_flags(sweep)
    _add_run_flags(sweep)
    sweep.set_defaults(func=cmd_sweep)

    dump = sub.add_parser("dump-grid", help="write the grid tags as CSV")
    dump.add_argument("--n", type=int, help="virtual tags per segment")
    dump.add_argument("--out", help="output CSV file (default: stdout)")
    _add_config_flags(dump)
    dump.set_defaults(func=cmd_dump_grid)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(
        args.verbose, logging.DEBUG
    )
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s"
    )
    try:
        return args.func(args)
    except OSError as err:
        logger.error("%s", err)
        return EXIT_IO
    except ValueError as err:
        logger.error("%s", err)
        return EXIT_CONFIG
