#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Tests for geometry, timing, command legality and refresh slicing."""

import pytest

from disturbsim.dram import (
    Command,
    DramAddress,
    DramDevice,
    Geometry,
    RefreshPerformed,
    RowClosed,
    RowOpened,
    TimingParams,
    first_violation,
    format_command_log,
    replay,
    rows_refreshed_by,
    rows_refreshed_by_burst,
)
from disturbsim.dram.commands import act, pre, ref
from disturbsim.dram.refresh import refresh_slot_of
from disturbsim.errors import ConfigurationError, GeometryError, IllegalCommandError
from disturbsim.types import CommandKind


class TestTimingParams:
    """Timing defaults, derived values and validation."""

    def test_defaults(self) -> None:
        """tRC is derived and the window holds 8192 refresh slots."""
        timing = TimingParams()
        assert timing.tRC == timing.tRAS + timing.tRP == 51
        assert timing.refresh_slots == 8192
        assert timing.tREFW == 8192 * 7800

    def test_inconsistent_trc_rejected(self) -> None:
        """An explicit tRC must equal tRAS + tRP."""
        with pytest.raises(ConfigurationError) as exc_info:
            TimingParams(tRC=40)
        assert exc_info.value.config_key == "timing.tRC"

    def test_window_must_be_multiple_of_interval(self) -> None:
        """tREFW is a whole number of refresh intervals."""
        with pytest.raises(ConfigurationError) as exc_info:
            TimingParams(tREFW=7800 * 10 + 1)
        assert exc_info.value.config_key == "timing.tREFW"

    def test_preset_with_override(self) -> None:
        """Named presets fill fields; keyword overrides win."""
        timing = TimingParams.from_preset("ddr4_3200", tCOL=12)
        assert timing.tRAS == 32
        assert timing.tCOL == 12
        assert timing.tRC == 46

    def test_unknown_preset(self) -> None:
        """Unknown preset names are configuration errors."""
        with pytest.raises(ConfigurationError) as exc_info:
            TimingParams.from_preset("lpddr5")
        assert exc_info.value.config_key == "timing.preset"


class TestGeometry:
    """Address checks, flat bank numbering and row remapping."""

    def test_flat_bank_round_trip(self) -> None:
        """bank_address inverts flat_bank for every bank."""
        geometry = Geometry(channels=2, ranks=2)
        for flat in range(geometry.total_banks):
            assert geometry.flat_bank(geometry.bank_address(flat)) == flat

    def test_check_names_offending_field(self, geometry: Geometry) -> None:
        """Out-of-range indices raise GeometryError naming the field."""
        with pytest.raises(GeometryError) as exc_info:
            geometry.check(DramAddress(row=geometry.rows))
        assert exc_info.value.field_name == "row"

    def test_xor_remap_is_involution(self) -> None:
        """Physical and logical row mapping invert each other."""
        geometry = Geometry(rows=1024, row_xor_mask=0b1010)
        for row in (0, 1, 511, 1023):
            assert geometry.logical_row(geometry.physical_row(row)) == row
        assert geometry.physical_row(0) == 0b1010

    def test_xor_remap_needs_power_of_two_rows(self) -> None:
        """Remapping a non power-of-two bank is rejected."""
        with pytest.raises(ConfigurationError):
            Geometry(rows=1000, row_xor_mask=3)

    def test_neighbors_clip_at_edges(self, geometry: Geometry) -> None:
        """Neighbors outside the bank are dropped."""
        assert geometry.neighbors(0, 1) == [1]
        assert geometry.neighbors(100, 2) == [98, 102]
        assert geometry.neighbors(geometry.rows - 1, 1) == [geometry.rows - 2]


class TestDramDevice:
    """Command legality and the events produced by applying commands."""

    @pytest.fixture
    def device(self, geometry: Geometry, timing: TimingParams) -> DramDevice:
        return DramDevice(geometry, timing)

    def test_act_pre_reports_on_time(self, device: DramDevice) -> None:
        """Closing a row reports how long it was open."""
        address = DramAddress(row=10)
        assert isinstance(device.apply_command(act(address, 0)), RowOpened)
        closed = device.apply_command(pre(address, 100))
        assert isinstance(closed, RowClosed)
        assert closed.t_agg_on == 100

    def test_early_precharge_violates_tras(self, device: DramDevice, timing: TimingParams) -> None:
        """PRE before tRAS elapses is illegal and names tRAS."""
        address = DramAddress(row=10)
        device.apply_command(act(address, 0))
        verdict = device.validate_command(pre(address, timing.tRAS - 1))
        assert not verdict.legal
        assert verdict.constraint == "tRAS"

    def test_illegal_apply_is_hard_fault(self, device: DramDevice) -> None:
        """Applying an illegal command raises IllegalCommandError."""
        device.apply_command(act(DramAddress(row=1), 0))
        with pytest.raises(IllegalCommandError) as exc_info:
            device.apply_command(act(DramAddress(row=2), 60))
        assert exc_info.value.constraint == "ROW_OPEN"

    def test_act_after_pre_needs_trp(self, device: DramDevice, timing: TimingParams) -> None:
        """A new ACT must wait tRP after the PRE."""
        address = DramAddress(row=1)
        device.apply_command(act(address, 0))
        device.apply_command(pre(address, timing.tRAS))
        verdict = device.validate_command(act(address, timing.tRAS + timing.tRP - 1))
        assert verdict.constraint == "tRP"
        assert device.validate_command(act(address, timing.tRAS + timing.tRP)).legal

    def test_read_needs_open_row_and_trcd(self, device: DramDevice, timing: TimingParams) -> None:
        """Column commands check the open row and tRCD."""
        address = DramAddress(row=5, column=3)
        assert device.validate_command(Command(CommandKind.RD, address, 0)).constraint == "ROW_MISS"
        device.apply_command(act(address, 0))
        assert device.validate_command(Command(CommandKind.RD, address, 1)).constraint == "tRCD"
        assert device.validate_command(Command(CommandKind.RD, address, timing.tRCD)).legal

    def test_refresh_requires_precharged_rank(self, device: DramDevice) -> None:
        """REF with an open bank violates the precharge requirement."""
        device.apply_command(act(DramAddress(bank=1, row=3), 0))
        assert device.validate_command(ref(DramAddress(), 40)).constraint == "REF_PRECHARGE"

    def test_refresh_counts_per_rank(self, device: DramDevice, timing: TimingParams) -> None:
        """Each REF reports its index within the rank."""
        first = device.apply_command(ref(DramAddress(), 0))
        second = device.apply_command(ref(DramAddress(), timing.tRFC))
        assert isinstance(first, RefreshPerformed) and isinstance(second, RefreshPerformed)
        assert (first.ref_index, second.ref_index) == (0, 1)

    def test_out_of_order_issue(self, device: DramDevice) -> None:
        """Commands on one channel must not go back in time."""
        device.apply_command(act(DramAddress(row=1), 100))
        assert device.validate_command(act(DramAddress(bank=1, row=1), 50)).constraint == "ORDER"


class TestLogs:
    """Replay and first-violation helpers over command logs."""

    def test_replay_returns_events(self, geometry: Geometry, timing: TimingParams) -> None:
        """Replaying a legal log yields one event per ACT and PRE."""
        address = DramAddress(row=7)
        log = [act(address, 0), pre(address, 36), act(address, 51), pre(address, 87)]
        events = replay(log, geometry, timing)
        assert [type(e) for e in events] == [RowOpened, RowClosed, RowOpened, RowClosed]

    def test_replay_is_deterministic(self, geometry: Geometry, timing: TimingParams) -> None:
        """Equal logs produce equal event streams."""
        address = DramAddress(row=7)
        log = [act(address, 0), pre(address, 500)]
        assert replay(log, geometry, timing) == replay(list(log), geometry, timing)

    def test_first_violation_names_constraint(self, geometry: Geometry, timing: TimingParams) -> None:
        """A corrupted log is rejected with the violated constraint."""
        address = DramAddress(row=7)
        assert first_violation([act(address, 0), pre(address, 36)], geometry, timing) is None
        assert first_violation([act(address, 0), pre(address, 35)], geometry, timing) == "tRAS"

    def test_format_command_log(self) -> None:
        """Logs render one command per line."""
        text = format_command_log([act(DramAddress(row=3), 0), ref(DramAddress(), 10)])
        assert text.splitlines() == ["0 ACT ch0/rk0/bg0/b0/r3", "10 REF ch0/rk0"]


class TestRefreshSlicing:
    """Round-robin refresh covers every row once per window."""

    def test_every_row_once_per_window(self) -> None:
        """A window of REFs covers each row exactly once."""
        timing = TimingParams(tREFI=7800, tREFW=7800 * 16)
        covered: list[int] = []
        for index in range(timing.refresh_slots):
            covered.extend(rows_refreshed_by(index, 100, timing))
        assert sorted(covered) == list(range(100))

    def test_burst_union(self, timing: TimingParams) -> None:
        """Postponed REFs restore the union of their slices."""
        rows = 65_536
        burst = rows_refreshed_by_burst([0, 1], rows, timing)
        assert burst == set(range(16))

    def test_slot_of_row_matches_its_slice(self) -> None:
        """The slot computed for a row is the REF whose slice holds it."""
        timing = TimingParams(tREFI=7800, tREFW=7800 * 16)
        for row in (0, 6, 7, 50, 99):
            assert row in rows_refreshed_by(refresh_slot_of(row, 100, timing), 100, timing)
        assert refresh_slot_of(99, 100, timing) == 14


# 🔨💾🔚
