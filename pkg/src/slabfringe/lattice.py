"""Angular mathematics of reflective grating diffraction.

A periodic surface reflects an incoming plane wave into discrete orders via

    sin(theta_out) = sin(theta_in) + n * wavelength / lattice_constant

with the integer n numbering the order. Everything in this module is a pure
function of its arguments: angles in radians measured from the surface
normal, lengths in meters. Orders whose sine leaves [-1, 1] do not
propagate; they are reported with the ``EVANESCENT`` sentinel rather than an
exception so enumeration loops can filter them cheaply. A negative arcsin
argument yields a negative angle, meaning the reflected beam travels
backwards along the surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_HALF_PI = math.pi / 2


class Evanescent:
    """Non-propagating outcome of the grating equation (|sine| > 1).

    Falsy singleton; compare with ``is EVANESCENT``.
    """

    _instance = None

    def __new__(cls) -> "Evanescent":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Evanescent"

    def __bool__(self) -> bool:
        return False


EVANESCENT = Evanescent()


@dataclass(frozen=True)
class SurfaceLattice:
    """Periodic reflecting surface, characterised by its lattice constant (m)."""

    lattice_constant: float

    def __post_init__(self) -> None:
        if not self.lattice_constant > 0:
            raise ValueError(
                f"lattice_constant must be positive, got {self.lattice_constant}"
            )


@dataclass(frozen=True)
class BeamConfig:
    """Incident matter-wave beam (SI units, angles in radians).

    ``waist`` is the beam radius entering the device; ``source_distance`` and
    ``detector_distance`` are the free-flight lengths before and after it.
    ``relative_wavelength_spread`` is the standard deviation of the wavelength
    distribution divided by its mean.
    """

    wavelength: float
    incidence_angle: float
    waist: float
    source_distance: float
    detector_distance: float
    relative_wavelength_spread: float = 0.0

    def __post_init__(self) -> None:
        if not self.wavelength > 0:
            raise ValueError(f"wavelength must be positive, got {self.wavelength}")
        if not 0 < self.incidence_angle < _HALF_PI:
            raise ValueError(
                "incidence_angle must lie strictly between 0 and pi/2, "
                f"got {self.incidence_angle}"
            )
        if not self.waist > 0:
            raise ValueError(f"waist must be positive, got {self.waist}")
        if self.source_distance < 0:
            raise ValueError(
                f"source_distance must be non-negative, got {self.source_distance}"
            )
        if not self.detector_distance > 0:
            raise ValueError(
                f"detector_distance must be positive, got {self.detector_distance}"
            )
        if self.relative_wavelength_spread < 0:
            raise ValueError(
                "relative_wavelength_spread must be non-negative, "
                f"got {self.relative_wavelength_spread}"
            )

    @property
    def wavenumber(self) -> float:
        """Magnitude of the wave vector, 2*pi/wavelength (1/m)."""
        return 2 * math.pi / self.wavelength


@dataclass(frozen=True, order=True)
class PathSpec:
    """Diffraction-order triple (n1, n2, n3) for the three bounces of a path.

    Orders are kept within the range configured for the enumeration
    (|n| <= 2 by default); the spec itself stores any integers.
    """

    n1: int
    n2: int
    n3: int

    @property
    def order_sum(self) -> int:
        return self.n1 + self.n2 + self.n3

    def orders(self) -> tuple[int, int, int]:
        return (self.n1, self.n2, self.n3)


def _check_incidence(theta_in: float) -> None:
    if not 0 <= theta_in < _HALF_PI:
        raise ValueError(f"incidence angle must lie in [0, pi/2), got {theta_in}")


def diffract_order(
    theta_in: float,
    n: int,
    lattice: SurfaceLattice,
    wavelength: float,
) -> float | Evanescent:
    """Reflected angle of order ``n``: arcsin(sin(theta_in) + n*wavelength/a).

    Returns ``EVANESCENT`` when the sine argument leaves [-1, 1]. With the
    convention used throughout (angles from the normal, non-negative for
    forward travel), negative orders shrink the angle for grazing incidence.
    """
    _check_incidence(theta_in)
    if not wavelength > 0:
        raise ValueError(f"wavelength must be positive, got {wavelength}")
    s = math.sin(theta_in) + n * wavelength / lattice.lattice_constant
    if -1.0 <= s <= 1.0:
        return math.asin(s)
    return EVANESCENT


def composed_exit_angle(
    theta_in: float,
    order_sum: int,
    lattice: SurfaceLattice,
    wavelength: float,
) -> float | Evanescent:
    """Exit angle after any chain of reflections whose orders sum to ``order_sum``.

    Composing the grating equation collapses to a single application with the
    summed order, so the exit direction depends on the orders only through
    their sum.
    """
    return diffract_order(theta_in, order_sum, lattice, wavelength)


def order_sum_constraint(n1: int, n2: int, n3: int, n1p: int, n2p: int) -> int:
    """Third-bounce order forcing a second path to share the first path's exit.

    Two paths leave in the same direction iff their order sums agree, which
    pins the free order of the second path to n1+n2+n3-n1p-n2p.
    """
    return n1 + n2 + n3 - n1p - n2p


def near_field_residual(
    beta: float, delta: float, gamma: float, epsilon: float
) -> float:
    """Horizontal-advance mismatch of two two-leg paths between the slabs.

    Each leg crossing the gap advances by separation*tan(angle); two paths
    meet again at the same point iff tan(beta)+tan(delta) equals
    tan(gamma)+tan(epsilon). Zero residual (within tolerance) means the paths
    recombine at a common third bounce and interfere already in the near
    field.
    """
    for name, angle in (
        ("beta", beta),
        ("delta", delta),
        ("gamma", gamma),
        ("epsilon", epsilon),
    ):
        if not 0 <= angle < _HALF_PI:
            raise ValueError(f"{name} must lie in [0, pi/2), got {angle}")
    return math.tan(beta) + math.tan(delta) - math.tan(gamma) - math.tan(epsilon)


def alpha_independent_orders(n1: int, n2: int, n1p: int, n2p: int) -> bool:
    """True when two order pairs recombine at one point for every incidence angle.

    The condition n1 == n1p + n2p and n1p == n1 + n2 makes the two paths
    traverse the same pair of leg angles in swapped order, so their
    horizontal advances match identically in the incidence angle.
    """
    return n1 == n1p + n2p and n1p == n1 + n2


def two_leg_path_length(
    theta_leg1: float, theta_leg2: float, separation: float
) -> float:
    """Geometric length of two successive gap crossings at the given angles."""
    for name, angle in (("theta_leg1", theta_leg1), ("theta_leg2", theta_leg2)):
        if not 0 <= angle < _HALF_PI:
            raise ValueError(f"{name} must lie in [0, pi/2), got {angle}")
    if not separation > 0:
        raise ValueError(f"separation must be positive, got {separation}")
    return separation * (1.0 / math.cos(theta_leg1) + 1.0 / math.cos(theta_leg2))


def path_phase(wavenumber: float, b: float, b_prime: float) -> float:
    """Phase difference k*(b - b_prime) accumulated along two path lengths.

    Antisymmetric under swapping the two lengths; unbounded (not wrapped).
    """
    if not wavenumber > 0:
        raise ValueError(f"wavenumber must be positive, got {wavenumber}")
    return wavenumber * (b - b_prime)
