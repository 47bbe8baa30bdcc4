#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Bank/row state and timing-constraint enforcement at nanosecond granularity."""

from __future__ import annotations

from collections.abc import Iterable

from attrs import define, field

from disturbsim.dram.commands import Command, DeviceEvent, RefreshPerformed, RowClosed, RowOpened
from disturbsim.dram.geometry import Geometry
from disturbsim.dram.timing import TimingParams
from disturbsim.errors import IllegalCommandError
from disturbsim.types import CommandKind

# Constraint names reported by validate_command
ORDER = "ORDER"
T_RAS = "tRAS"
T_RP = "tRP"
T_RC = "tRC"
T_RCD = "tRCD"
T_COL = "tCOL"
REF_PRECHARGE = "REF_PRECHARGE"
ROW_OPEN = "ROW_OPEN"
ROW_MISS = "ROW_MISS"
BUSY = "BUSY"


@define(slots=True)
class BankState:
    """State of one bank. ``opened_at`` is meaningful only while a row is open."""

    open_row: int | None = None
    opened_at: int = 0
    last_precharge_at: int | None = None
    last_activate_at: int | None = None
    last_column_at: int | None = None
    busy_until: int = 0

    @property
    def is_open(self) -> bool:
        return self.open_row is not None

    def t_agg_on(self, now: int) -> int:
        """On-time of the currently open row."""
        return now - self.opened_at if self.open_row is not None else 0

    def act_ready_at(self, timing: TimingParams) -> int:
        """Earliest time an ACT is legal, assuming the bank is closed."""
        ready = self.busy_until
        if self.last_precharge_at is not None:
            ready = max(ready, self.last_precharge_at + timing.tRP)
        if self.last_activate_at is not None:
            ready = max(ready, self.last_activate_at + timing.tRC)
        return ready

    def pre_ready_at(self, timing: TimingParams) -> int:
        return self.opened_at + timing.tRAS

    def column_ready_at(self, timing: TimingParams) -> int:
        ready = self.opened_at + timing.tRCD
        if self.last_column_at is not None:
            ready = max(ready, self.last_column_at + timing.tCOL)
        return ready


@define(frozen=True, slots=True)
class Verdict:
    """Outcome of validate_command. ``constraint`` names the first violation."""

    legal: bool
    constraint: str | None = None

    @classmethod
    def ok(cls) -> Verdict:
        return cls(True)

    @classmethod
    def violates(cls, constraint: str) -> Verdict:
        return cls(False, constraint)


LEGAL = Verdict.ok()


@define(slots=True)
class DramDevice:
    """Per-bank state machine of one device, all channels included."""

    geometry: Geometry
    timing: TimingParams
    banks: list[BankState] = field(init=False)
    ref_counts: list[int] = field(init=False)
    last_issue: list[int] = field(init=False)

    def __attrs_post_init__(self) -> None:
        self.banks = [BankState() for _ in range(self.geometry.total_banks)]
        self.ref_counts = [0] * (self.geometry.channels * self.geometry.ranks)
        self.last_issue = [0] * self.geometry.channels

    def bank(self, flat_bank: int) -> BankState:
        return self.banks[flat_bank]

    def validate_command(self, cmd: Command) -> Verdict:
        """Check every timing and state constraint for ``cmd``.

        Raises:
            GeometryError: if the address is outside the geometry
        """
        self.geometry.check(cmd.address)
        now = cmd.issue_time
        if now < self.last_issue[cmd.address.channel]:
            return Verdict.violates(ORDER)

        if cmd.kind is CommandKind.REF:
            return self._validate_ref(cmd)

        state = self.banks[self.geometry.flat_bank(cmd.address)]
        if cmd.kind is CommandKind.ACT:
            if state.is_open:
                return Verdict.violates(ROW_OPEN)
            if now < state.busy_until:
                return Verdict.violates(BUSY)
            if state.last_precharge_at is not None and now < state.last_precharge_at + self.timing.tRP:
                return Verdict.violates(T_RP)
            if state.last_activate_at is not None and now < state.last_activate_at + self.timing.tRC:
                return Verdict.violates(T_RC)
            return LEGAL

        if cmd.kind is CommandKind.PRE:
            # PRE to a closed bank is a no-op
            if state.is_open and now < state.opened_at + self.timing.tRAS:
                return Verdict.violates(T_RAS)
            return LEGAL

        # RD / WR
        if state.open_row != cmd.address.row:
            return Verdict.violates(ROW_MISS)
        if now < state.opened_at + self.timing.tRCD:
            return Verdict.violates(T_RCD)
        if state.last_column_at is not None and now < state.last_column_at + self.timing.tCOL:
            return Verdict.violates(T_COL)
        return LEGAL

    def _validate_ref(self, cmd: Command) -> Verdict:
        now = cmd.issue_time
        for flat in self.geometry.banks_of_rank(self.geometry.flat_rank(cmd.address)):
            state = self.banks[flat]
            if state.is_open:
                return Verdict.violates(REF_PRECHARGE)
            if state.last_precharge_at is not None and now < state.last_precharge_at + self.timing.tRP:
                return Verdict.violates(T_RP)
            if now < state.busy_until:
                return Verdict.violates(BUSY)
        return LEGAL

    def apply_command(self, cmd: Command) -> DeviceEvent | None:
        """Apply a command and return the event it produced.

        Raises:
            IllegalCommandError: if the command is not legal in the current state
        """
        verdict = self.validate_command(cmd)
        if not verdict.legal:
            raise IllegalCommandError(verdict.constraint or "unknown", cmd.kind.value, cmd.issue_time)

        now = cmd.issue_time
        self.last_issue[cmd.address.channel] = now

        if cmd.kind is CommandKind.REF:
            flat_rank = self.geometry.flat_rank(cmd.address)
            for flat in self.geometry.banks_of_rank(flat_rank):
                self.banks[flat].busy_until = now + self.timing.tRFC
            index = self.ref_counts[flat_rank]
            self.ref_counts[flat_rank] += 1
            return RefreshPerformed(flat_rank, index, now)

        flat = self.geometry.flat_bank(cmd.address)
        state = self.banks[flat]
        if cmd.kind is CommandKind.ACT:
            state.open_row = cmd.address.row
            state.opened_at = now
            state.last_activate_at = now
            state.last_column_at = None
            return RowOpened(flat, cmd.address.row, now)

        if cmd.kind is CommandKind.PRE:
            if state.open_row is None:
                return None
            closed = RowClosed(flat, state.open_row, state.opened_at, now)
            state.open_row = None
            state.last_precharge_at = now
            return closed

        state.last_column_at = now
        return None

    def occupy_bank(self, flat_bank: int, now: int, duration: int) -> None:
        """Hold a closed, ready bank for an internal operation such as a preventive refresh.

        Raises:
            IllegalCommandError: if the bank is open or not yet ready
        """
        state = self.banks[flat_bank]
        if state.is_open:
            raise IllegalCommandError(ROW_OPEN, "preventive refresh", now)
        if now < state.act_ready_at(self.timing):
            raise IllegalCommandError(BUSY, "preventive refresh", now)
        state.busy_until = now + duration
        # The internal refresh is an ACT/PRE pair inside the device
        state.last_activate_at = now


def replay(log: Iterable[Command], geometry: Geometry, timing: TimingParams) -> list[DeviceEvent]:
    """Apply a command log to a fresh device and return its event stream."""
    device = DramDevice(geometry, timing)
    events: list[DeviceEvent] = []
    for cmd in log:
        event = device.apply_command(cmd)
        if event is not None:
            events.append(event)
    return events


def first_violation(log: Iterable[Command], geometry: Geometry, timing: TimingParams) -> str | None:
    """Return the constraint name of the first illegal command in ``log``, if any."""
    device = DramDevice(geometry, timing)
    for cmd in log:
        verdict = device.validate_command(cmd)
        if not verdict.legal:
            return verdict.constraint
        device.apply_command(cmd)
    return None


# 🔨💾🔚
