"""Command-line front end.

Subcommands: validate, table, trace, pattern, scan-alpha, scan-lambda. Every
run is a pure function of the config file and flags, so identical inputs
produce byte-identical artifacts. Relative output paths are resolved against
$SLABFRINGE_OUTDIR when it is set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from .config import SimulationConfig, config_summary, load_config
from .errors import ConfigError
from .interference import (
    DEFAULT_PATTERN_POINTS,
    PATTERN_COLUMNS,
    default_offsets,
    fringe_contrast,
    intensity_pattern,
    pattern_rows,
    spread_averaged_pattern,
)
from .scans import (
    scan_incidence,
    scan_wavelength,
    write_incidence_scan_csv,
    write_wavelength_scan_csv,
)
from .tracer import (
    channel_transmission,
    enumerate_paths,
    format_table,
    shared_exit_groups,
    splitting_angle,
    write_table_csv,
)

OUTDIR_ENV = "SLABFRINGE_OUTDIR"


def _resolve_out(path: str) -> Path:
    out = Path(path)
    base = os.environ.get(OUTDIR_ENV)
    if base and not out.is_absolute():
        out = Path(base) / out
    return out


def _float_range(lo: float, hi: float, step: float) -> list[float]:
    if step <= 0 or hi < lo:
        raise ConfigError(
            f"invalid grid: min={lo}, max={hi}, step={step}"
        )
    count = int(round((hi - lo) / step)) + 1
    # Round each point to kill accumulation drift, keeping grid values exact
    # decimals (83.0 stays 83.0 regardless of the step arithmetic).
    return [round(lo + i * step, 10) for i in range(count)]


def _channels(config: SimulationConfig):
    return enumerate_paths(
        config.geometry,
        config.beam,
        config.lattice,
        config.reflection.probabilities,
        config.order_range,
    )


def _cmd_validate(config: SimulationConfig, args: argparse.Namespace) -> int:
    print(config_summary(config))
    return 0


def _cmd_table(config: SimulationConfig, args: argparse.Namespace) -> int:
    channels = _channels(config)
    out = _resolve_out(args.out)
    with out.open("w", encoding="utf-8", newline="") as stream:
        write_table_csv(channels, stream)
    print(format_table(channels))
    total_paths = sum(len(channel.paths) for channel in channels)
    print(f"{total_paths} transmitted paths in {len(channels)} channels -> {out}")
    return 0


def _cmd_trace(config: SimulationConfig, args: argparse.Namespace) -> int:
    channels = _channels(config)
    coherence_tol = 1e-12 * config.geometry.slab_length
    payload = {
        "parameters": {
            "wavelength_m": config.beam.wavelength,
            "incidence_rad": config.beam.incidence_angle,
            "lattice_constant_m": config.lattice.lattice_constant,
            "separation_m": config.geometry.separation,
            "slab_length_m": config.geometry.slab_length,
            "entry_position_m": config.geometry.entry_position,
            "order_range": list(config.order_range),
        },
        "channels": [
            {
                "exit_angle_rad": channel.exit_angle,
                "exit_angle_deg": math.degrees(channel.exit_angle),
                "order_sum": channel.order_sum,
                "transmission": channel_transmission(channel),
                "near_field_coherent_groups": [
                    [list(path.spec.orders()) for path in group]
                    for group in shared_exit_groups(channel, coherence_tol)
                ],
                "paths": [
                    {
                        "orders": list(path.spec.orders()),
                        "angles_rad": list(path.angles),
                        "bounce_positions_m": list(path.bounce_positions),
                        "optical_length_m": path.optical_length,
                        "amplitude": path.amplitude,
                    }
                    for path in channel.paths
                ],
            }
            for channel in channels
        ],
    }
    if len([p for c in channels for p in c.paths]) >= 2:
        payload["splitting_angle_rad"] = splitting_angle(channels)
    out = _resolve_out(args.out)
    out.write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    print(f"trace written to {out}")
    return 0


def _cmd_pattern(config: SimulationConfig, args: argparse.Namespace) -> int:
    channels = _channels(config)
    if not channels:
        raise ConfigError("no transmitted channels for this configuration")
    target = math.radians(args.channel)
    channel = min(channels, key=lambda c: abs(c.exit_angle - target))
    if abs(channel.exit_angle - target) > math.radians(0.5):
        available = ", ".join(
            f"{math.degrees(c.exit_angle):.2f}" for c in channels
        )
        raise ConfigError(
            f"--channel {args.channel}: no exit channel near that angle; "
            f"available (deg): {available}"
        )

    grid = default_offsets(channel, config.beam, args.points)
    if config.beam.relative_wavelength_spread > 0:
        with_env = spread_averaged_pattern(
            channel, config.beam, grid, args.quadrature_points, remove_envelope=False
        )
        no_env = spread_averaged_pattern(
            channel, config.beam, grid, args.quadrature_points, remove_envelope=True
        )
    else:
        with_env = intensity_pattern(channel, config.beam, grid, remove_envelope=False)
        no_env = intensity_pattern(channel, config.beam, grid, remove_envelope=True)

    primary = no_env if args.no_envelope else with_env
    rows = pattern_rows(with_envelope=primary, without_envelope=no_env)
    out = _resolve_out(args.out)
    with out.open("w", encoding="utf-8", newline="") as stream:
        stream.write(",".join(PATTERN_COLUMNS) + "\n")
        for row in rows:
            stream.write(",".join(repr(value) for value in row) + "\n")

    contrast = fringe_contrast(no_env)
    print(
        f"channel {math.degrees(channel.exit_angle):.2f} deg "
        f"(order sum {channel.order_sum}): contrast {contrast:.4f}",
        file=sys.stderr,
    )
    print(f"pattern written to {out}")
    return 0


def _cmd_scan_alpha(config: SimulationConfig, args: argparse.Namespace) -> int:
    degrees = _float_range(args.alpha_min_deg, args.alpha_max_deg, args.alpha_step_deg)
    records = scan_incidence(
        config.geometry,
        config.lattice,
        config.reflection.probabilities,
        config.beam.wavelength,
        [math.radians(value) for value in degrees],
        config.order_range,
    )
    out = _resolve_out(args.out)
    with out.open("w", encoding="utf-8", newline="") as stream:
        write_incidence_scan_csv(records, stream)
    print(f"{len(records)} records -> {out}")
    return 0


def _cmd_scan_lambda(config: SimulationConfig, args: argparse.Namespace) -> int:
    angstroms = _float_range(
        args.lambda_min_angstrom, args.lambda_max_angstrom, args.lambda_step_angstrom
    )
    records = scan_wavelength(
        config.geometry,
        config.lattice,
        config.reflection.probabilities,
        config.beam.incidence_angle,
        [value * 1e-10 for value in angstroms],
        config.order_range,
    )
    out = _resolve_out(args.out)
    with out.open("w", encoding="utf-8", newline="") as stream:
        write_wavelength_scan_csv(records, stream)
    print(f"{len(records)} records -> {out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slabfringe",
        description="Monolithic reflective matter-wave interferometer simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="scenario file (JSON)")
        p.set_defaults(handler=handler)
        return p

    add("validate", _cmd_validate, "check a config and print the SI parameters")

    p = add("table", _cmd_table, "trace all paths and write the per-path report")
    p.add_argument("--out", default="table.csv")

    p = add("trace", _cmd_trace, "write the full trace as JSON")
    p.add_argument("--out", default="trace.json")

    p = add("pattern", _cmd_pattern, "far-field fringe pattern of one exit channel")
    p.add_argument(
        "--channel",
        type=float,
        required=True,
        help="exit angle of the channel, in degrees",
    )
    p.add_argument("--points", type=int, default=DEFAULT_PATTERN_POINTS)
    p.add_argument(
        "--no-envelope",
        action="store_true",
        help="write the modulation without the beam envelope in the intensity column",
    )
    p.add_argument("--quadrature-points", type=int, default=64)
    p.add_argument("--out", default="pattern.csv")

    p = add("scan-alpha", _cmd_scan_alpha, "sweep the incidence angle")
    p.add_argument("--alpha-min-deg", type=float, default=0.5)
    p.add_argument("--alpha-max-deg", type=float, default=89.5)
    p.add_argument("--alpha-step-deg", type=float, default=0.1)
    p.add_argument("--out", default="scan_alpha.csv")

    p = add("scan-lambda", _cmd_scan_lambda, "sweep the wavelength")
    p.add_argument("--lambda-min-angstrom", type=float, default=0.1)
    p.add_argument("--lambda-max-angstrom", type=float, default=2.0)
    p.add_argument("--lambda-step-angstrom", type=float, default=0.005)
    p.add_argument("--out", default="scan_lambda.csv")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        return args.handler(config, args)
    except ConfigError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
