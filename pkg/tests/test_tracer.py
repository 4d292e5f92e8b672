import io
import math
from dataclasses import replace

import pytest

from slabfringe import (
    EVANESCENT,
    Blocked,
    ConfigError,
    ExitChannel,
    InterferometerGeometry,
    PathSpec,
    TracedPath,
    channel_transmission,
    diffract_order,
    enumerate_paths,
    near_field_residual,
    shared_exit_groups,
    splitting_angle,
    trace_path,
)
from slabfringe.tracer import TABLE_COLUMNS, format_table, table_rows, write_table_csv

# Independently reconstructed expectations for the worked helium scenario:
# per-bounce probabilities and the per-channel path sets.
RHO = {0: 0.06, -1: 0.03, 1: 0.03, -2: 0.015, 2: 0.015}

EXPECTED_CHANNELS = {
    # order sum -> (exit angle deg, set of (n1, n2, n3))
    -3: (30.32, {(0, -1, -2)}),
    -2: (41.87, {(-1, 1, -2), (0, -1, -1)}),
    -1: (56.10, {(-2, 2, -1), (0, -2, 1), (-1, 1, -1), (0, -1, 0)}),
    0: (
        83.00,
        {
            (-2, 1, 1),
            (-2, 2, 0),
            (0, -2, 2),
            (-1, 0, 1),
            (-1, 1, 0),
            (0, -1, 1),
            (-1, -1, 2),
        },
    ),
}


def _segment_ray_positions(geometry, beam, lattice, spec):
    """Oracle: march the ray leg by leg as 2-D segments between y=0 and y=s.

    Uses direction vectors and explicit line intersections instead of the
    tan-based closed form.
    """
    wavelength = beam.wavelength
    theta = beam.incidence_angle
    x = geometry.entry_position
    y = 0.0
    positions = [x]
    for i, n in enumerate(spec.orders()[:2]):
        theta = diffract_order(theta, n, lattice, wavelength)
        if theta is EVANESCENT or theta < 0:
            return None
        going_up = i % 2 == 0
        direction = (math.sin(theta), math.cos(theta) if going_up else -math.cos(theta))
        target_y = geometry.separation if going_up else 0.0
        t = (target_y - y) / direction[1]
        x = x + t * direction[0]
        y = target_y
        positions.append(x)
    return positions


class TestTracePath:
    def test_single_diffraction_then_specular(self, paper_config):
        cfg = paper_config
        traced = trace_path(
            cfg.geometry, cfg.beam, cfg.lattice, PathSpec(0, -1, 0),
            cfg.reflection.probabilities,
        )
        assert isinstance(traced, TracedPath)
        beta, delta, zeta = (math.degrees(a) for a in traced.angles)
        assert beta == pytest.approx(83.0, abs=0.01)
        assert delta == pytest.approx(56.10, abs=0.01)
        assert zeta == pytest.approx(56.10, abs=0.01)
        assert traced.optical_length == pytest.approx(0.0500, abs=5e-5)
        assert traced.amplitude == pytest.approx(RHO[0] * RHO[-1] * RHO[0], rel=1e-12)

    def test_single_path_channel_member(self, paper_config):
        cfg = paper_config
        traced = trace_path(
            cfg.geometry, cfg.beam, cfg.lattice, PathSpec(0, -1, -2),
            cfg.reflection.probabilities,
        )
        assert isinstance(traced, TracedPath)
        assert math.degrees(traced.exit_angle) == pytest.approx(30.32, abs=0.01)
        assert traced.optical_length == pytest.approx(0.0500, abs=5e-5)

    def test_evanescent_first_leg_is_blocked(self, paper_config):
        cfg = paper_config
        result = trace_path(
            cfg.geometry, cfg.beam, cfg.lattice, PathSpec(1, 0, 0),
            cfg.reflection.probabilities,
        )
        assert isinstance(result, Blocked)
        assert "evanescent" in result.reason

    def test_pure_specular_overshoots(self, paper_config):
        cfg = paper_config
        result = trace_path(
            cfg.geometry, cfg.beam, cfg.lattice, PathSpec(0, 0, 0),
            cfg.reflection.probabilities,
        )
        assert isinstance(result, Blocked)
        # x_B = s tan(83 deg) = 40.7 mm is still on the slab, x_C = 81.4 mm is not
        assert "before bounce C" in result.reason

    def test_missing_reflectivity_is_config_error(self, paper_config):
        cfg = paper_config
        with pytest.raises(ConfigError, match="order 0"):
            trace_path(
                cfg.geometry, cfg.beam, cfg.lattice, PathSpec(0, -1, 0), {-1: 0.03}
            )

    def test_transmitted_paths_propagate_forward(self, paper_channels):
        for channel in paper_channels:
            for path in channel.paths:
                x_a, x_b, x_c = path.bounce_positions
                assert x_a <= x_b <= x_c
                assert 0 < path.amplitude < 1
                assert path.optical_length >= 2 * 5e-3


class TestEnumeratePaths:
    def test_reproduces_all_fourteen_paths(self, paper_channels):
        assert [len(c.paths) for c in paper_channels] == [1, 2, 4, 7]
        for channel in paper_channels:
            expected_deg, expected_specs = EXPECTED_CHANNELS[channel.order_sum]
            assert math.degrees(channel.exit_angle) == pytest.approx(
                expected_deg, abs=0.01
            )
            assert {p.spec.orders() for p in channel.paths} == expected_specs

    def test_channels_sorted_and_paths_lexicographic(self, paper_channels):
        angles = [c.exit_angle for c in paper_channels]
        assert angles == sorted(angles)
        for channel in paper_channels:
            specs = [p.spec.orders() for p in channel.paths]
            assert specs == sorted(specs)

    def test_two_path_channel_lengths_agree(self, paper_channels):
        channel = next(c for c in paper_channels if c.order_sum == -2)
        lengths = [p.optical_length for p in channel.paths]
        assert lengths[0] == pytest.approx(lengths[1], rel=1e-12)
        assert lengths[0] == pytest.approx(0.0500, abs=5e-5)

    def test_specular_only_range_is_blocked_by_paper_geometry(self, paper_config):
        cfg = paper_config
        channels = enumerate_paths(
            cfg.geometry, cfg.beam, cfg.lattice, cfg.reflection.probabilities, (0, 0)
        )
        assert channels == []

    def test_specular_only_range_transmits_with_longer_slab(self, paper_config):
        cfg = paper_config
        geometry = replace(cfg.geometry, slab_length=90e-3)
        channels = enumerate_paths(
            geometry, cfg.beam, cfg.lattice, cfg.reflection.probabilities, (0, 0)
        )
        assert len(channels) == 1
        assert channels[0].order_sum == 0
        assert len(channels[0].paths) == 1

    def test_blocked_entry_yields_no_channels(self, paper_config):
        cfg = paper_config
        # the incident ray would have to pass through the upper slab
        geometry = replace(cfg.geometry, entry_position=45e-3)
        beam = replace(cfg.beam, incidence_angle=math.radians(30.0))
        channels = enumerate_paths(
            geometry, beam, cfg.lattice, cfg.reflection.probabilities
        )
        assert channels == []

    def test_deterministic_output(self, paper_config):
        cfg = paper_config
        first = enumerate_paths(
            cfg.geometry, cfg.beam, cfg.lattice, cfg.reflection.probabilities,
            cfg.order_range,
        )
        second = enumerate_paths(
            cfg.geometry, cfg.beam, cfg.lattice, cfg.reflection.probabilities,
            cfg.order_range,
        )
        for a, b in zip(first, second):
            assert a.exit_angle == b.exit_angle
            assert a.paths == b.paths

    def test_total_transmission_bounded_by_unfiltered_sum(self, paper_channels):
        total = sum(channel_transmission(c) for c in paper_channels)
        unfiltered = sum(
            RHO[n1] * RHO[n2] * RHO[n3]
            for n1 in range(-2, 3)
            for n2 in range(-2, 3)
            for n3 in range(-2, 3)
        )
        assert 0 < total <= unfiltered

    def test_geometry_oracle_agreement(self, paper_config):
        cfg = paper_config
        tolerance = 1e-12 * cfg.geometry.slab_length
        checked = 0
        for n1 in range(-2, 3):
            for n2 in range(-2, 3):
                for n3 in range(-2, 3):
                    spec = PathSpec(n1, n2, n3)
                    traced = trace_path(
                        cfg.geometry, cfg.beam, cfg.lattice, spec,
                        cfg.reflection.probabilities,
                    )
                    if not isinstance(traced, TracedPath):
                        continue
                    oracle = _segment_ray_positions(
                        cfg.geometry, cfg.beam, cfg.lattice, spec
                    )
                    for ours, independent in zip(traced.bounce_positions, oracle):
                        assert abs(ours - independent) <= tolerance
                    checked += 1
        assert checked == 14


class TestChannelAggregates:
    def test_amplitude_ratios_within_first_order_channel(self, paper_channels):
        channel = next(c for c in paper_channels if c.order_sum == -1)
        reference = next(c for c in paper_channels if c.order_sum == -3)
        base = reference.paths[0].amplitude
        by_spec = {p.spec.orders(): p.amplitude / base for p in channel.paths}
        assert by_spec[(-2, 2, -1)] == pytest.approx(0.25, rel=1e-12)
        assert by_spec[(0, -2, 1)] == pytest.approx(1.0, rel=1e-12)
        assert by_spec[(-1, 1, -1)] == pytest.approx(1.0, rel=1e-12)
        assert by_spec[(0, -1, 0)] == pytest.approx(4.0, rel=1e-12)

    def test_channel_sums_relative_to_single_path_channel(self, paper_channels):
        base = channel_transmission(
            next(c for c in paper_channels if c.order_sum == -3)
        )
        ratios = {
            c.order_sum: channel_transmission(c) / base for c in paper_channels
        }
        assert ratios == {
            -3: pytest.approx(1.0, rel=1e-12),
            -2: pytest.approx(2.5, rel=1e-12),
            -1: pytest.approx(6.25, rel=1e-12),
            0: pytest.approx(8.0, rel=1e-12),
        }

    def test_single_path_channel_transmission(self, paper_channels):
        channel = next(c for c in paper_channels if c.order_sum == -3)
        assert channel_transmission(channel) == channel.paths[0].amplitude

    def test_splitting_angle(self, paper_channels):
        assert splitting_angle(paper_channels) == pytest.approx(0.7179, abs=5e-4)

    def test_splitting_angle_single_first_order(self, paper_channels):
        # keep only paths starting with n1 in {0, -1}
        filtered = []
        for channel in paper_channels:
            kept = tuple(p for p in channel.paths if p.spec.n1 in (0, -1))
            if kept:
                filtered.append(
                    ExitChannel(channel.exit_angle, channel.order_sum, kept)
                )
        assert splitting_angle(filtered) == pytest.approx(0.4695, abs=5e-4)

    def test_splitting_angle_needs_two_paths(self, paper_channels):
        single = next(c for c in paper_channels if c.order_sum == -3)
        with pytest.raises(ValueError):
            splitting_angle([single])

    def test_near_field_membership_invariant(self, paper_config, paper_channels):
        # pairs either recombine at one point (zero residual) or land at
        # distinct third bounces
        tolerance = 1e-12 * paper_config.geometry.slab_length
        for channel in paper_channels:
            for i, first in enumerate(channel.paths):
                for second in channel.paths[i + 1:]:
                    residual = near_field_residual(
                        first.angles[0], first.angles[1],
                        second.angles[0], second.angles[1],
                    )
                    same_exit_point = (
                        abs(
                            first.bounce_positions[2] - second.bounce_positions[2]
                        ) <= tolerance
                    )
                    assert abs(residual) < 1e-10 or not same_exit_point

    def test_shared_exit_groups_flags_recombining_pairs(self, paper_config, paper_channels):
        tolerance = 1e-12 * paper_config.geometry.slab_length
        by_sum = {c.order_sum: c for c in paper_channels}
        assert shared_exit_groups(by_sum[-3], tolerance) == []
        two_path = shared_exit_groups(by_sum[-2], tolerance)
        assert len(two_path) == 1 and len(two_path[0]) == 2
        first_order = shared_exit_groups(by_sum[-1], tolerance)
        grouped_specs = {
            frozenset(p.spec.orders() for p in group) for group in first_order
        }
        assert frozenset({(0, -1, 0), (-1, 1, -1)}) in grouped_specs
        assert frozenset({(-2, 2, -1), (0, -2, 1)}) in grouped_specs


class TestTableReport:
    def test_csv_round_trips_full_precision(self, paper_channels):
        stream = io.StringIO()
        write_table_csv(paper_channels, stream)
        lines = stream.getvalue().strip().split("\n")
        assert lines[0] == ",".join(TABLE_COLUMNS)
        assert len(lines) == 15
        rows = table_rows(paper_channels)
        for line, row in zip(lines[1:], rows):
            cells = line.split(",")
            assert float(cells[0]) == row["exit_angle_deg"]
            assert float(cells[5]) == row["path_cm"]
            assert float(cells[6]) == row["amplitude_raw"]
            assert cells[11] == "true"

    def test_display_table_rounds_like_published_values(self, paper_channels):
        text = format_table(paper_channels)
        assert "0.0068" in text  # 0.00675 rounds half away from zero
        assert "30.32" in text and "41.87" in text
        assert "1.4486" in text and "0.9791" in text and "0.7307" in text


class TestGeometryValidation:
    def test_invariants(self):
        with pytest.raises(ValueError, match="separation"):
            InterferometerGeometry(separation=0.0, slab_length=0.05)
        with pytest.raises(ValueError, match="slab_length"):
            InterferometerGeometry(separation=5e-3, slab_length=-1.0)
        with pytest.raises(ValueError, match="entry_position"):
            InterferometerGeometry(
                separation=5e-3, slab_length=0.05, entry_position=0.06
            )

    def test_entry_position_can_reproduce_scenario_anywhere_admissible(self, paper_config):
        cfg = paper_config
        # entry close to the admissible limit still traces, with shifted
        # positions; the path census changes because some rows run out of slab
        geometry = replace(cfg.geometry, entry_position=1e-3)
        channels = enumerate_paths(
            geometry, cfg.beam, cfg.lattice, cfg.reflection.probabilities
        )
        assert channels
        for channel in channels:
            for path in channel.paths:
                assert path.bounce_positions[0] == 1e-3
