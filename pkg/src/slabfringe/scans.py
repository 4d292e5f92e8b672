"""Parameter sweeps: exit-channel maps versus incidence angle and wavelength.

Each grid point is an independent enumeration of the device; records hold
which channels transmit, where they exit, and (for the incidence scan) their
transmission relative to the strongest channel at that grid point. Angles
with no transmitted channel are kept as explicit dark records so a renderer
can paint the dark regions.
"""

from __future__ import annotations

import csv
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import TextIO

from .lattice import BeamConfig, SurfaceLattice
from .tracer import (
    DEFAULT_ORDER_RANGE,
    InterferometerGeometry,
    channel_transmission,
    enumerate_paths,
)

# The far-field beam parameters never enter the tracing, so scans run with
# nominal stand-ins.
_SCAN_WAIST = 1e-3
_SCAN_FLIGHT = 1.0


@dataclass(frozen=True)
class IncidenceScanRecord:
    """One channel at one incidence angle; dark angles carry None fields."""

    incidence_angle: float
    exit_angle: float | None
    relative_intensity: float | None


@dataclass(frozen=True)
class WavelengthScanRecord:
    wavelength: float
    order_sum: int
    exit_angle: float


def default_incidence_grid() -> list[float]:
    """0.5 to 89.5 degrees in 0.1-degree steps (radians)."""
    return [math.radians(i / 10) for i in range(5, 896)]


def default_wavelength_grid() -> list[float]:
    """0.1 to 2.0 angstrom in 0.005-angstrom steps (meters)."""
    return [(i / 1000) * 1e-10 for i in range(100, 2001, 5)]


def _scan_beam(wavelength: float, incidence_angle: float) -> BeamConfig:
    return BeamConfig(
        wavelength=wavelength,
        incidence_angle=incidence_angle,
        waist=_SCAN_WAIST,
        source_distance=_SCAN_FLIGHT,
        detector_distance=_SCAN_FLIGHT,
    )


def scan_incidence(
    geometry: InterferometerGeometry,
    lattice: SurfaceLattice,
    reflectivities: Mapping[int, float],
    wavelength: float,
    alpha_grid: Sequence[float],
    order_range: tuple[int, int] = DEFAULT_ORDER_RANGE,
) -> list[IncidenceScanRecord]:
    """Channel positions and relative strengths for each incidence angle.

    Per angle, transmissions are normalised to that angle's maximum; exactly
    one record per angle carries 1.0 (an exact tie is resolved towards the
    smaller exit angle by demoting the others one ulp, keeping the maximum
    marker unique).
    """
    records: list[IncidenceScanRecord] = []
    for alpha in alpha_grid:
        channels = enumerate_paths(
            geometry, _scan_beam(wavelength, alpha), lattice, reflectivities, order_range
        )
        if not channels:
            records.append(IncidenceScanRecord(alpha, None, None))
            continue
        strongest = max(channel_transmission(channel) for channel in channels)
        saw_max = False
        for channel in channels:  # already sorted by exit angle
            relative = channel_transmission(channel) / strongest
            if relative == 1.0:
                if saw_max:
                    relative = math.nextafter(1.0, 0.0)
                saw_max = True
            records.append(IncidenceScanRecord(alpha, channel.exit_angle, relative))
    return records


def scan_wavelength(
    geometry: InterferometerGeometry,
    lattice: SurfaceLattice,
    reflectivities: Mapping[int, float],
    alpha: float,
    lambda_grid: Sequence[float],
    order_range: tuple[int, int] = DEFAULT_ORDER_RANGE,
) -> list[WavelengthScanRecord]:
    """Exit angle of every transmitted channel for each wavelength."""
    records: list[WavelengthScanRecord] = []
    for wavelength in lambda_grid:
        channels = enumerate_paths(
            geometry, _scan_beam(wavelength, alpha), lattice, reflectivities, order_range
        )
        for channel in channels:
            records.append(
                WavelengthScanRecord(wavelength, channel.order_sum, channel.exit_angle)
            )
    return records


INCIDENCE_SCAN_COLUMNS = ("alpha_deg", "exit_angle_deg", "rel_intensity")
WAVELENGTH_SCAN_COLUMNS = ("lambda_angstrom", "order_sum", "exit_angle_deg")


def write_incidence_scan_csv(
    records: Sequence[IncidenceScanRecord], stream: TextIO
) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(INCIDENCE_SCAN_COLUMNS)
    for record in records:
        if record.exit_angle is None:
            writer.writerow([repr(math.degrees(record.incidence_angle)), "", ""])
        else:
            writer.writerow(
                [
                    repr(math.degrees(record.incidence_angle)),
                    repr(math.degrees(record.exit_angle)),
                    repr(record.relative_intensity),
                ]
            )


def write_wavelength_scan_csv(
    records: Sequence[WavelengthScanRecord], stream: TextIO
) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(WAVELENGTH_SCAN_COLUMNS)
    for record in records:
        writer.writerow(
            [
                repr(record.wavelength / 1e-10),
                str(record.order_sum),
                repr(math.degrees(record.exit_angle)),
            ]
        )
