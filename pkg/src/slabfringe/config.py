"""Scenario configuration: flat JSON with unit-suffixed keys.

Every numeric key carries its unit in the name (wavelength_angstrom,
separation_mm, incidence_deg, ...) and is converted to SI on load, so the
rest of the package only ever sees meters and radians. Reflectivities are a
list of [order, probability] pairs. Unknown keys are rejected.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError
from .lattice import BeamConfig, SurfaceLattice
from .reflection import ReflectionTable
from .tracer import InterferometerGeometry

_ANGSTROM = 1e-10
_MM = 1e-3
_MRAD = 1e-3

_REQUIRED_KEYS = (
    "wavelength_angstrom",
    "incidence_deg",
    "waist_mm",
    "source_distance_m",
    "lattice_constant_angstrom",
    "separation_mm",
    "slab_length_mm",
    "reflectivities",
)

_OPTIONAL_KEYS = {
    "detector_distance_m": 1.0,
    "relative_wavelength_spread": 0.0,
    "entry_position_mm": 0.0,
    "peak_width_mrad": 0.1,
    "order_min": -2,
    "order_max": 2,
}


@dataclass(frozen=True)
class SimulationConfig:
    """One fully validated scenario in SI units."""

    beam: BeamConfig
    lattice: SurfaceLattice
    geometry: InterferometerGeometry
    reflection: ReflectionTable
    order_range: tuple[int, int]


def _number(raw: dict, key: str) -> float:
    value = raw[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{key}: must be finite, got {value!r}")
    return float(value)


def _integer(raw: dict, key: str) -> int:
    value = raw[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key}: expected an integer, got {value!r}")
    return value


def _reflectivities(raw: dict) -> dict[int, float]:
    pairs = raw["reflectivities"]
    if not isinstance(pairs, list) or not pairs:
        raise ConfigError(
            "reflectivities: expected a non-empty list of [order, probability] pairs"
        )
    table: dict[int, float] = {}
    for pair in pairs:
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or isinstance(pair[0], bool)
            or not isinstance(pair[0], int)
            or isinstance(pair[1], bool)
            or not isinstance(pair[1], (int, float))
        ):
            raise ConfigError(
                f"reflectivities: malformed entry {pair!r}, expected [order, probability]"
            )
        order, probability = pair[0], float(pair[1])
        if order in table:
            raise ConfigError(f"reflectivities: duplicate order {order}")
        table[order] = probability
    return table


def parse_config(raw: dict) -> SimulationConfig:
    """Build a validated scenario from a decoded config mapping."""
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    known = set(_REQUIRED_KEYS) | set(_OPTIONAL_KEYS)
    for key in raw:
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
    for key in _REQUIRED_KEYS:
        if key not in raw:
            raise ConfigError(f"missing config key {key!r}")
    merged = dict(_OPTIONAL_KEYS)
    merged.update(raw)

    try:
        beam = BeamConfig(
            wavelength=_number(merged, "wavelength_angstrom") * _ANGSTROM,
            incidence_angle=math.radians(_number(merged, "incidence_deg")),
            waist=_number(merged, "waist_mm") * _MM,
            source_distance=_number(merged, "source_distance_m"),
            detector_distance=_number(merged, "detector_distance_m"),
            relative_wavelength_spread=_number(merged, "relative_wavelength_spread"),
        )
        lattice = SurfaceLattice(
            lattice_constant=_number(merged, "lattice_constant_angstrom") * _ANGSTROM
        )
        geometry = InterferometerGeometry(
            separation=_number(merged, "separation_mm") * _MM,
            slab_length=_number(merged, "slab_length_mm") * _MM,
            entry_position=_number(merged, "entry_position_mm") * _MM,
        )
        reflection = ReflectionTable(
            probabilities=_reflectivities(merged),
            peak_width=_number(merged, "peak_width_mrad") * _MRAD,
        )
    except ConfigError:
        raise
    except ValueError as error:
        raise ConfigError(str(error)) from None

    order_min = _integer(merged, "order_min")
    order_max = _integer(merged, "order_max")
    if order_min > order_max:
        raise ConfigError(
            f"order_min ({order_min}) must not exceed order_max ({order_max})"
        )
    for order in range(order_min, order_max + 1):
        if order not in reflection.probabilities:
            raise ConfigError(
                f"reflectivities: order {order} inside the configured range "
                "has no probability"
            )
    if not geometry.admits_entry(beam.incidence_angle):
        raise ConfigError(
            "entry_position_mm: the incident ray cannot clear the upper slab "
            "edge at the configured incidence angle"
        )
    return SimulationConfig(beam, lattice, geometry, reflection, (order_min, order_max))


def load_config(path: str | Path) -> SimulationConfig:
    """Load and validate a scenario file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as error:
        raise ConfigError(f"cannot read config {path}: {error}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as error:
        raise ConfigError(f"config {path} is not valid JSON: {error}") from None
    return parse_config(raw)


def config_summary(config: SimulationConfig) -> str:
    """Effective SI parameters, one per line, for `validate`."""
    beam = config.beam
    rows = [
        ("wavelength", f"{beam.wavelength!r} m"),
        ("incidence_angle", f"{beam.incidence_angle!r} rad"),
        ("waist", f"{beam.waist!r} m"),
        ("source_distance", f"{beam.source_distance!r} m"),
        ("detector_distance", f"{beam.detector_distance!r} m"),
        ("relative_wavelength_spread", repr(beam.relative_wavelength_spread)),
        ("lattice_constant", f"{config.lattice.lattice_constant!r} m"),
        ("separation", f"{config.geometry.separation!r} m"),
        ("slab_length", f"{config.geometry.slab_length!r} m"),
        ("entry_position", f"{config.geometry.entry_position!r} m"),
        ("peak_width", f"{config.reflection.peak_width!r} rad"),
        ("order_range", f"{config.order_range[0]} .. {config.order_range[1]}"),
    ]
    for order in sorted(config.reflection.probabilities):
        rows.append((f"reflectivity[{order:+d}]", repr(config.reflection.probabilities[order])))
    width = max(len(name) for name, _ in rows)
    return "\n".join(f"{name:<{width}}  {value}" for name, value in rows)
