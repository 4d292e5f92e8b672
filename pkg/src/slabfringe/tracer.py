"""Path enumeration through the finite two-slab geometry.

The device is a gap of width ``separation`` between two parallel reflecting
slabs of length ``slab_length``. The beam enters through the open left edge,
bounces at A on the lower surface, B on the upper, C on the lower again, and
must then clear the right edge of the upper slab to reach the detector.
Positions are measured along the slabs from the left edge, in meters.

A path is kept only when it propagates forward at every bounce, stays on the
slabs, and its final leg escapes past the right edge; everything else is
reported as :class:`Blocked`. Beams that would bounce a fourth time fall
back into the gap and are treated as lost.
"""

from __future__ import annotations

import csv
import math
from collections.abc import Mapping
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import TextIO, Union

from .errors import ConfigError
from .lattice import (
    EVANESCENT,
    BeamConfig,
    PathSpec,
    SurfaceLattice,
    composed_exit_angle,
    diffract_order,
    two_leg_path_length,
)

DEFAULT_ORDER_RANGE = (-2, 2)

# Angle agreement below this is treated as "the same exit direction" (rad).
ANGLE_TOLERANCE = 1e-10


@dataclass(frozen=True)
class InterferometerGeometry:
    """Two parallel slabs: gap ``separation``, length ``slab_length``.

    ``entry_position`` is where the incoming beam first strikes the lower
    surface, measured from the open left edge. The incoming ray also has to
    clear the left edge of the upper slab, which additionally requires
    entry_position <= separation * tan(incidence); that cross-check depends
    on the beam and is applied during tracing.
    """

    separation: float
    slab_length: float
    entry_position: float = 0.0

    def __post_init__(self) -> None:
        if not self.separation > 0:
            raise ValueError(f"separation must be positive, got {self.separation}")
        if not self.slab_length > 0:
            raise ValueError(f"slab_length must be positive, got {self.slab_length}")
        if not 0 <= self.entry_position <= self.slab_length:
            raise ValueError(
                "entry_position must lie on the lower slab "
                f"(0 <= x <= {self.slab_length}), got {self.entry_position}"
            )

    def admits_entry(self, incidence_angle: float) -> bool:
        """Whether the incident ray reaches the entry point without hitting the upper slab."""
        return self.entry_position <= self.separation * math.tan(incidence_angle)


@dataclass(frozen=True)
class TracedPath:
    """One fully resolved three-bounce path through the device."""

    spec: PathSpec
    angles: tuple[float, float, float]  # leg angles after bounces A, B, C
    bounce_positions: tuple[float, float, float]  # x_A, x_B, x_C along the slabs
    optical_length: float  # in-device length from A to C
    amplitude: float  # product of the three per-bounce probabilities
    transmitted: bool

    @property
    def first_bounce_angle(self) -> float:
        return self.angles[0]

    @property
    def exit_angle(self) -> float:
        return self.angles[2]


@dataclass(frozen=True)
class Blocked:
    """A path that does not make it through the device."""

    spec: PathSpec
    reason: str


@dataclass(frozen=True)
class TraceContext:
    """Inputs a channel was enumerated with, kept so it can be re-traced."""

    geometry: InterferometerGeometry
    lattice: SurfaceLattice
    reflectivities: Mapping[int, float]
    order_range: tuple[int, int]


@dataclass(frozen=True)
class ExitChannel:
    """All transmitted paths sharing one exit direction (one order sum)."""

    exit_angle: float
    order_sum: int
    paths: tuple[TracedPath, ...]
    context: TraceContext | None = None

    def __post_init__(self) -> None:
        if not self.paths:
            raise ValueError("an exit channel must contain at least one path")
        # arcsin loses precision near grazing exit, so widen the agreement
        # tolerance by the local derivative there.
        tolerance = ANGLE_TOLERANCE / max(math.cos(self.exit_angle), 1e-12)
        for path in self.paths:
            if path.spec.order_sum != self.order_sum:
                raise ValueError(
                    f"path {path.spec} does not belong to order-sum {self.order_sum}"
                )
            if abs(path.exit_angle - self.exit_angle) > tolerance:
                raise ValueError(
                    f"path {path.spec} exit angle deviates from the channel's"
                )


def _reflectivity(reflectivities: Mapping[int, float], order: int) -> float:
    try:
        return reflectivities[order]
    except KeyError:
        raise ConfigError(
            f"reflectivities: no probability configured for order {order}"
        ) from None


def trace_path(
    geometry: InterferometerGeometry,
    beam: BeamConfig,
    lattice: SurfaceLattice,
    spec: PathSpec,
    reflectivities: Mapping[int, float],
) -> Union[TracedPath, Blocked]:
    """Trace one order triple through the device.

    Returns the resolved :class:`TracedPath` when the path is transmitted and
    :class:`Blocked` (with a reason) otherwise. Missing reflectivities raise
    :class:`ConfigError`.
    """
    if not geometry.admits_entry(beam.incidence_angle):
        return Blocked(spec, "incident ray cannot clear the upper slab edge")

    wavelength = beam.wavelength
    beta = diffract_order(beam.incidence_angle, spec.n1, lattice, wavelength)
    if beta is EVANESCENT:
        return Blocked(spec, "evanescent at bounce A")
    if beta < 0:
        return Blocked(spec, "reflected backwards at bounce A")
    delta = diffract_order(beta, spec.n2, lattice, wavelength)
    if delta is EVANESCENT:
        return Blocked(spec, "evanescent at bounce B")
    if delta < 0:
        return Blocked(spec, "reflected backwards at bounce B")
    zeta = diffract_order(delta, spec.n3, lattice, wavelength)
    if zeta is EVANESCENT:
        return Blocked(spec, "evanescent at bounce C")

    s = geometry.separation
    d = geometry.slab_length
    x_a = geometry.entry_position
    x_b = x_a + s * math.tan(beta)
    x_c = x_b + s * math.tan(delta)
    if x_b > d:
        return Blocked(spec, "overshoots the upper slab before bounce B")
    if x_c > d:
        return Blocked(spec, "overshoots the lower slab before bounce C")
    # After C the beam must reach the upper-surface level past the right edge;
    # a fourth bounce means it is lost inside the device.
    if zeta < 0 or x_c + s * math.tan(zeta) < d:
        return Blocked(spec, "intercepted by the upper slab after bounce C")

    amplitude = (
        _reflectivity(reflectivities, spec.n1)
        * _reflectivity(reflectivities, spec.n2)
        * _reflectivity(reflectivities, spec.n3)
    )
    return TracedPath(
        spec=spec,
        angles=(beta, delta, zeta),
        bounce_positions=(x_a, x_b, x_c),
        optical_length=two_leg_path_length(beta, delta, s),
        amplitude=amplitude,
        transmitted=True,
    )


def enumerate_paths(
    geometry: InterferometerGeometry,
    beam: BeamConfig,
    lattice: SurfaceLattice,
    reflectivities: Mapping[int, float],
    order_range: tuple[int, int] = DEFAULT_ORDER_RANGE,
) -> list[ExitChannel]:
    """Trace every order triple in the range and group the survivors.

    Channels come back sorted by exit angle; within a channel the paths are
    in lexicographic (n1, n2, n3) order. Identical inputs always produce the
    identical list.
    """
    lo, hi = order_range
    if lo > hi:
        raise ValueError(f"order_range must be non-empty, got {order_range}")
    orders = range(lo, hi + 1)
    by_sum: dict[int, list[TracedPath]] = {}
    for n1 in orders:
        for n2 in orders:
            for n3 in orders:
                result = trace_path(
                    geometry, beam, lattice, PathSpec(n1, n2, n3), reflectivities
                )
                if isinstance(result, TracedPath):
                    by_sum.setdefault(result.spec.order_sum, []).append(result)

    context = TraceContext(geometry, lattice, dict(reflectivities), (lo, hi))
    channels = []
    for order_sum, paths in by_sum.items():
        exit_angle = composed_exit_angle(
            beam.incidence_angle, order_sum, lattice, beam.wavelength
        )
        if exit_angle is EVANESCENT:
            # Only reachable when the summed sine rounds epsilon past 1 while
            # the chained legs stayed inside; keep the traced direction.
            exit_angle = paths[0].exit_angle
        channels.append(
            ExitChannel(exit_angle, order_sum, tuple(paths), context)
        )
    channels.sort(key=lambda channel: channel.exit_angle)
    return channels


def channel_transmission(channel: ExitChannel) -> float:
    """Fraction of the incoming beam ending up in this channel (incoherent sum)."""
    return sum(path.amplitude for path in channel.paths)


def splitting_angle(channels: list[ExitChannel]) -> float:
    """Angular span covered by the first-bounce directions of all transmitted paths."""
    betas = [path.first_bounce_angle for channel in channels for path in channel.paths]
    if len(betas) < 2:
        raise ValueError("splitting angle needs at least two transmitted paths")
    return max(betas) - min(betas)


def shared_exit_groups(
    channel: ExitChannel, tolerance: float
) -> list[tuple[TracedPath, ...]]:
    """Groups of channel members recombining at the same third bounce.

    Paths whose x_C positions agree within ``tolerance`` overlap spatially at
    bounce C and interfere already in the near field. Only groups with more
    than one member are returned.
    """
    groups: list[list[TracedPath]] = []
    for path in channel.paths:
        for group in groups:
            if abs(group[0].bounce_positions[2] - path.bounce_positions[2]) <= tolerance:
                group.append(path)
                break
        else:
            groups.append([path])
    return [tuple(group) for group in groups if len(group) > 1]


TABLE_COLUMNS = (
    "exit_angle_deg",
    "n1",
    "beta_rad",
    "n2",
    "n3",
    "path_cm",
    "amplitude_raw",
    "amplitude_paper_scaled",
    "x_A_mm",
    "x_B_mm",
    "x_C_mm",
    "transmitted",
)

# The raw three-bounce probability products are reported alongside a copy
# scaled by 1000, which matches the amplitude convention used in published
# tabulations of this scenario. Ratios are identical either way.
PAPER_AMPLITUDE_SCALE = 1000.0


def table_rows(channels: list[ExitChannel]) -> list[dict[str, object]]:
    """Flatten channels into report rows, full precision, stable order."""
    rows: list[dict[str, object]] = []
    for channel in channels:
        for path in channel.paths:
            rows.append(
                {
                    "exit_angle_deg": math.degrees(channel.exit_angle),
                    "n1": path.spec.n1,
                    "beta_rad": path.angles[0],
                    "n2": path.spec.n2,
                    "n3": path.spec.n3,
                    "path_cm": path.optical_length * 100.0,
                    "amplitude_raw": path.amplitude,
                    "amplitude_paper_scaled": path.amplitude * PAPER_AMPLITUDE_SCALE,
                    "x_A_mm": path.bounce_positions[0] * 1e3,
                    "x_B_mm": path.bounce_positions[1] * 1e3,
                    "x_C_mm": path.bounce_positions[2] * 1e3,
                    "transmitted": path.transmitted,
                }
            )
    return rows


def _cell(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_table_csv(channels: list[ExitChannel], stream: TextIO) -> None:
    """Write the per-path report as CSV (full double precision)."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for row in table_rows(channels):
        writer.writerow([_cell(row[column]) for column in TABLE_COLUMNS])


def _display(value: float, places: int) -> str:
    # Published tables round half away from zero; Python's formatter rounds
    # half to even, which flips exact-midpoint amplitudes like 0.00675.
    quantum = Decimal(1).scaleb(-places)
    return str(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def format_table(channels: list[ExitChannel]) -> str:
    """Human-readable path report, rounded to customary display precision."""
    lines = [
        f"{'angle(deg)':>10} {'n1':>3} {'beta(rad)':>9} {'n2':>3} {'n3':>3} "
        f"{'b(cm)':>6} {'ampl(x1000)':>11}"
    ]
    for row in table_rows(channels):
        lines.append(
            f"{_display(row['exit_angle_deg'], 2):>10} {row['n1']:>3d} "
            f"{_display(row['beta_rad'], 4):>9} "
            f"{row['n2']:>3d} {row['n3']:>3d} {_display(row['path_cm'], 2):>6} "
            f"{_display(row['amplitude_paper_scaled'], 4):>11}"
        )
    return "\n".join(lines)
