"""Monolithic reflective matter-wave interferometer simulator.

A beam is diffracted three times between two parallel crystal surfaces;
this package enumerates the surviving paths, their transmission fractions,
and the far-field interference patterns per exit channel, plus parameter
sweeps over incidence angle and wavelength.
"""

from .config import SimulationConfig, load_config, parse_config
from .errors import ConfigError
from .interference import (
    FringePattern,
    default_offsets,
    envelope_factor,
    fringe_contrast,
    fringe_period,
    grouped_path_lengths,
    intensity_pattern,
    smallest_length_difference,
    spread_averaged_pattern,
)
from .lattice import (
    EVANESCENT,
    BeamConfig,
    Evanescent,
    PathSpec,
    SurfaceLattice,
    alpha_independent_orders,
    composed_exit_angle,
    diffract_order,
    near_field_residual,
    order_sum_constraint,
    path_phase,
    two_leg_path_length,
)
from .reflection import (
    ReflectionTable,
    composite_reflection_amplitude,
    interferometer_reflection,
    reflection_function,
)
from .scans import (
    IncidenceScanRecord,
    WavelengthScanRecord,
    default_incidence_grid,
    default_wavelength_grid,
    scan_incidence,
    scan_wavelength,
)
from .tracer import (
    Blocked,
    ExitChannel,
    InterferometerGeometry,
    TracedPath,
    channel_transmission,
    enumerate_paths,
    shared_exit_groups,
    splitting_angle,
    trace_path,
)

__version__ = "0.1.0"

__all__ = [
    "BeamConfig",
    "Blocked",
    "ConfigError",
    "EVANESCENT",
    "Evanescent",
    "ExitChannel",
    "FringePattern",
    "IncidenceScanRecord",
    "InterferometerGeometry",
    "PathSpec",
    "ReflectionTable",
    "SimulationConfig",
    "SurfaceLattice",
    "TracedPath",
    "WavelengthScanRecord",
    "alpha_independent_orders",
    "channel_transmission",
    "composed_exit_angle",
    "composite_reflection_amplitude",
    "default_incidence_grid",
    "default_offsets",
    "default_wavelength_grid",
    "diffract_order",
    "enumerate_paths",
    "envelope_factor",
    "fringe_contrast",
    "fringe_period",
    "grouped_path_lengths",
    "intensity_pattern",
    "interferometer_reflection",
    "load_config",
    "near_field_residual",
    "order_sum_constraint",
    "parse_config",
    "path_phase",
    "reflection_function",
    "scan_incidence",
    "scan_wavelength",
    "shared_exit_groups",
    "smallest_length_difference",
    "splitting_angle",
    "spread_averaged_pattern",
    "trace_path",
    "two_leg_path_length",
]
