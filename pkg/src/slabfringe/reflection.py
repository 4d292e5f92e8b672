"""Angular reflection functions of a diffractive surface and of the whole device.

A single surface reflects an incidence angle theta1 into a comb of Gaussian
peaks, one per propagating order, each weighted by that order's probability.
The full interferometer behaves like one composite reflector whose amplitude
at an outgoing angle theta2 is the coherent sum over every transmitted
three-bounce path: probability product, in-device phase exp(i*k*b), and a
Gaussian profile centred on the path's exit direction.
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Mapping
from dataclasses import dataclass, replace

from .lattice import EVANESCENT, BeamConfig, SurfaceLattice, diffract_order
from .tracer import ExitChannel, InterferometerGeometry, enumerate_paths

# Width of the diffraction peaks when a config does not set one (rad). Far
# smaller than any channel spacing of interest, so peaks stay separated.
DEFAULT_PEAK_WIDTH = 1e-4


@dataclass(frozen=True)
class ReflectionTable:
    """Per-order diffraction probabilities plus the common peak width (rad).

    Probabilities are per-event fractions in (0, 1); their total must stay
    below one since part of the signal is always lost.
    """

    probabilities: Mapping[int, float]
    peak_width: float = DEFAULT_PEAK_WIDTH

    def __post_init__(self) -> None:
        if not self.probabilities:
            raise ValueError("reflectivities: at least one order is required")
        object.__setattr__(self, "probabilities", dict(self.probabilities))
        for order, rho in self.probabilities.items():
            if not 0 < rho < 1:
                raise ValueError(
                    f"reflectivities: probability for order {order} must lie "
                    f"in (0, 1), got {rho}"
                )
        total = sum(self.probabilities.values())
        if not total < 1:
            raise ValueError(
                f"reflectivities: probabilities must sum to less than 1, got {total}"
            )
        if not self.peak_width > 0:
            raise ValueError(f"peak_width must be positive, got {self.peak_width}")

    @property
    def order_range(self) -> tuple[int, int]:
        return (min(self.probabilities), max(self.probabilities))


def reflection_function(
    table: ReflectionTable,
    theta1: float,
    theta2: float,
    lattice: SurfaceLattice,
    wavelength: float,
) -> float:
    """Single-surface reflected intensity profile at outgoing angle theta2.

    Sums rho_n * exp(-(theta2 - theta_n)^2 / (2 sigma^2)) over the
    propagating orders, with theta_n from the grating equation at incidence
    theta1. Evanescent orders contribute nothing.
    """
    two_sigma_sq = 2.0 * table.peak_width**2
    total = 0.0
    for order in sorted(table.probabilities):
        theta_n = diffract_order(theta1, order, lattice, wavelength)
        if theta_n is EVANESCENT:
            continue
        total += table.probabilities[order] * math.exp(
            -((theta2 - theta_n) ** 2) / two_sigma_sq
        )
    return total


def composite_reflection_amplitude(
    channels: list[ExitChannel],
    wavenumber: float,
    theta2: float,
    peak_width: float,
) -> complex:
    """Coherent device amplitude at theta2 from already-traced channels.

    Each transmitted path contributes amplitude * exp(i k b) under a Gaussian
    profile centred on its channel's exit angle. Exposed separately from
    :func:`interferometer_reflection` so the phase factor can be probed at an
    arbitrary wavenumber (k -> 0 removes all phases).
    """
    two_sigma_sq = 2.0 * peak_width**2
    total = 0j
    for channel in channels:
        profile = math.exp(-((theta2 - channel.exit_angle) ** 2) / two_sigma_sq)
        if profile == 0.0:
            continue
        for path in channel.paths:
            total += (
                path.amplitude
                * cmath.exp(1j * wavenumber * path.optical_length)
                * profile
            )
    return total


def interferometer_reflection(
    table: ReflectionTable,
    geometry: InterferometerGeometry,
    beam: BeamConfig,
    lattice: SurfaceLattice,
    theta1: float,
    theta2: float,
) -> complex:
    """Composite reflection amplitude of the whole device.

    Paths are enumerated for incidence theta1 over the orders listed in the
    table; the geometry acts as the transmission filter.
    """
    channels = enumerate_paths(
        geometry,
        replace(beam, incidence_angle=theta1),
        lattice,
        table.probabilities,
        table.order_range,
    )
    return composite_reflection_amplitude(
        channels, beam.wavenumber, theta2, table.peak_width
    )
