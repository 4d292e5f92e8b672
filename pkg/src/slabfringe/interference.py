"""Far-field fringe synthesis per exit channel.

In the far field every transmitted path of a channel contributes a partial
wave; at a small angular offset phi from the channel centre the intensity is

    I(phi) = |sum_n a_n exp(i k sin(phi) b_n / 2)|^2 * exp(-2 L2^2 sin^2(phi) / w^2)

with a_n the path probability products and b_n the in-device path lengths.
The Gaussian factor is the beam envelope on the detector (waist w, flight
length L2) and can be dropped to study the modulation alone. Note the phase
here is the exit-plane angular term k*sin(phi)*b/2, a different quantity
from the on-axis phase difference k*(b - b').

Wavelength spread is handled incoherently: patterns for nearby wavelengths,
each re-traced and shifted by its own exit-angle offset, are averaged under
a normal wavelength density via Gauss-Hermite quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from numpy.polynomial.hermite import hermgauss

from .lattice import BeamConfig
from .tracer import ExitChannel, enumerate_paths

# Path lengths closer than this (relative) belong to one interfering group;
# they only differ by arcsin/cos round-off of equivalent leg sequences.
PATH_LENGTH_RTOL = 1e-9

# 12*341 + 1 points: an odd, 12-divisible-interval grid over +-3 fringe
# periods lands exactly on phi = 0 and on every half-period, so sampled
# extrema coincide with the true ones.
DEFAULT_PATTERN_POINTS = 4093


@dataclass(frozen=True)
class FringePattern:
    """Sampled far-field intensity around one exit channel's centre."""

    channel: ExitChannel
    offsets: np.ndarray  # angular offsets from the channel centre (rad)
    intensities: np.ndarray
    envelope_removed: bool
    beam: BeamConfig


def envelope_factor(beam: BeamConfig, offsets: np.ndarray) -> np.ndarray:
    """Gaussian beam envelope on the detector as a function of angular offset."""
    sin_phi = np.sin(np.asarray(offsets, dtype=float))
    return np.exp(-2.0 * (beam.detector_distance * sin_phi / beam.waist) ** 2)


def grouped_path_lengths(channel: ExitChannel) -> list[tuple[float, float]]:
    """Cluster the channel's paths by optical length: [(length, summed amplitude)].

    Lengths within ``PATH_LENGTH_RTOL`` of each other are one group; such
    paths stay in phase at every angle of interest.
    """
    ordered = sorted(channel.paths, key=lambda path: path.optical_length)
    groups: list[list[float]] = []
    for path in ordered:
        if groups and path.optical_length - groups[-1][0] <= PATH_LENGTH_RTOL * path.optical_length:
            groups[-1][1] += path.amplitude
        else:
            groups.append([path.optical_length, path.amplitude])
    return [(length, amplitude) for length, amplitude in groups]


def smallest_length_difference(channel: ExitChannel) -> float | None:
    """Smallest distinct path-length difference in the channel, or None."""
    lengths = [length for length, _ in grouped_path_lengths(channel)]
    if len(lengths) < 2:
        return None
    return min(b - a for a, b in zip(lengths, lengths[1:]))


def fringe_period(channel: ExitChannel, beam: BeamConfig) -> float | None:
    """Period of the slowest fringe in sin(phi), or None for a flat channel.

    One full cycle of the phase difference k*sin(phi)*delta_b/2 spans
    4*pi/(k*delta_b) in sin(phi); the smallest length difference sets the
    widest (resolving) period.
    """
    delta_b = smallest_length_difference(channel)
    if delta_b is None:
        return None
    return 4.0 * math.pi / (beam.wavenumber * delta_b)


def default_offsets(
    channel: ExitChannel, beam: BeamConfig, points: int = DEFAULT_PATTERN_POINTS
) -> np.ndarray:
    """Offset grid spanning +-3 fringe periods, or +-3 envelope widths if flat."""
    period = fringe_period(channel, beam)
    if period is None:
        half_span = 3.0 * beam.waist / beam.detector_distance
    else:
        half_span = 3.0 * period
    return np.linspace(-half_span, half_span, points)


def _coherent_intensity(
    channel: ExitChannel, wavenumber: float, sin_phi: np.ndarray
) -> np.ndarray:
    lengths = np.array([path.optical_length for path in channel.paths])
    amplitudes = np.array([path.amplitude for path in channel.paths])
    field = np.exp(1j * (wavenumber / 2.0) * np.outer(sin_phi, lengths)) @ amplitudes
    return np.abs(field) ** 2


def intensity_pattern(
    channel: ExitChannel,
    beam: BeamConfig,
    phi_grid: np.ndarray | None = None,
    remove_envelope: bool = False,
) -> FringePattern:
    """Monochromatic far-field pattern of one channel on the given offset grid."""
    if phi_grid is None:
        phi_grid = default_offsets(channel, beam)
    offsets = np.asarray(phi_grid, dtype=float)
    if offsets.size == 0 or np.any(np.abs(offsets) >= math.pi / 2):
        raise ValueError("phi_grid must be non-empty and lie within (-pi/2, pi/2)")
    intensities = _coherent_intensity(channel, beam.wavenumber, np.sin(offsets))
    if not remove_envelope:
        intensities = intensities * envelope_factor(beam, offsets)
    return FringePattern(channel, offsets, intensities, remove_envelope, beam)


def fringe_contrast(pattern: FringePattern) -> float:
    """(I_max - I_min) / (I_max + I_min) over the sampled grid.

    Requires the envelope removed, and a grid covering at least one full
    fringe period; channels without distinct path lengths are flat and have
    zero contrast by definition.
    """
    if not pattern.envelope_removed:
        raise ValueError("fringe contrast is defined on envelope-removed patterns")
    period = fringe_period(pattern.channel, pattern.beam)
    if period is None:
        return 0.0
    span = math.sin(pattern.offsets.max()) - math.sin(pattern.offsets.min())
    if span < period:
        raise ValueError(
            "pattern spans less than one fringe period; contrast undefined"
        )
    highest = float(pattern.intensities.max())
    lowest = float(pattern.intensities.min())
    return (highest - lowest) / (highest + lowest)


def spread_averaged_pattern(
    channel: ExitChannel,
    beam: BeamConfig,
    phi_grid: np.ndarray | None = None,
    quadrature_points: int = 64,
    remove_envelope: bool = False,
) -> FringePattern:
    """Incoherent wavelength average of the channel's pattern.

    The wavelength is drawn from a normal density with mean
    ``beam.wavelength`` and standard deviation ``relative_wavelength_spread``
    times the mean, integrated by Gauss-Hermite quadrature. For every
    wavelength node the channel is re-traced from scratch (exit angle, path
    lengths, transmission), and its pattern contributes shifted by its own
    exit-angle offset, so both fringe broadening and the sideways walk of the
    whole pattern are captured. Zero spread returns exactly the
    monochromatic pattern.

    Wavelength nodes that fall at or below zero (possible only for extreme
    spreads) are dropped and the quadrature weights renormalised.
    """
    if phi_grid is None:
        phi_grid = default_offsets(channel, beam)
    spread = beam.relative_wavelength_spread
    if spread == 0.0:
        return intensity_pattern(channel, beam, phi_grid, remove_envelope)
    if quadrature_points < 3:
        raise ValueError("quadrature_points must be at least 3 for nonzero spread")
    context = channel.context
    if context is None:
        raise ValueError(
            "channel carries no trace context; enumerate it with enumerate_paths"
        )

    offsets = np.asarray(phi_grid, dtype=float)
    if offsets.size == 0 or np.any(np.abs(offsets) >= math.pi / 2):
        raise ValueError("phi_grid must be non-empty and lie within (-pi/2, pi/2)")

    nodes, weights = hermgauss(quadrature_points)
    sigma = spread * beam.wavelength
    accumulated = np.zeros_like(offsets)
    weight_total = 0.0
    for node, weight in zip(nodes, weights):
        wavelength = beam.wavelength + math.sqrt(2.0) * sigma * node
        if wavelength <= 0:
            continue
        weight_total += weight
        beam_i = replace(
            beam, wavelength=wavelength, relative_wavelength_spread=0.0
        )
        channels_i = enumerate_paths(
            context.geometry,
            beam_i,
            context.lattice,
            context.reflectivities,
            context.order_range,
        )
        match = [c for c in channels_i if c.order_sum == channel.order_sum]
        if not match:
            continue  # the channel is dark at this wavelength
        channel_i = match[0]
        shifted = offsets - (channel_i.exit_angle - channel.exit_angle)
        intensity_i = _coherent_intensity(
            channel_i, beam_i.wavenumber, np.sin(shifted)
        )
        if not remove_envelope:
            intensity_i = intensity_i * envelope_factor(beam, shifted)
        accumulated += weight * intensity_i
    if weight_total == 0.0:
        raise ValueError("all quadrature nodes fell at non-positive wavelengths")
    return FringePattern(
        channel, offsets, accumulated / weight_total, remove_envelope, beam
    )


PATTERN_COLUMNS = ("phi_rad", "sin_phi", "intensity", "intensity_no_envelope")


def pattern_rows(
    with_envelope: FringePattern, without_envelope: FringePattern
) -> list[tuple[float, float, float, float]]:
    """Pair up envelope-on and envelope-off patterns for export."""
    if with_envelope.offsets.shape != without_envelope.offsets.shape or np.any(
        with_envelope.offsets != without_envelope.offsets
    ):
        raise ValueError("patterns must share one offset grid")
    rows = []
    for phi, on, off in zip(
        with_envelope.offsets, with_envelope.intensities, without_envelope.intensities
    ):
        rows.append((float(phi), math.sin(float(phi)), float(on), float(off)))
    return rows
