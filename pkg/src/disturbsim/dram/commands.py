#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""DRAM commands and the events the device emits when applying them."""

from __future__ import annotations

from collections.abc import Iterable

from attrs import define

from disturbsim.dram.geometry import DramAddress
from disturbsim.types import CommandKind


@define(frozen=True, slots=True)
class Command:
    """One command on a channel's command bus."""

    kind: CommandKind
    address: DramAddress
    issue_time: int

    def describe(self) -> str:
        a = self.address
        if self.kind is CommandKind.REF:
            where = f"ch{a.channel}/rk{a.rank}"
        elif self.kind in (CommandKind.RD, CommandKind.WR):
            where = f"ch{a.channel}/rk{a.rank}/bg{a.bankgroup}/b{a.bank}/r{a.row}/c{a.column}"
        else:
            where = f"ch{a.channel}/rk{a.rank}/bg{a.bankgroup}/b{a.bank}/r{a.row}"
        return f"{self.issue_time} {self.kind.value} {where}"


def act(address: DramAddress, time: int) -> Command:
    return Command(CommandKind.ACT, address, time)


def pre(address: DramAddress, time: int) -> Command:
    return Command(CommandKind.PRE, address, time)


def ref(address: DramAddress, time: int) -> Command:
    return Command(CommandKind.REF, address, time)


def format_command_log(log: Iterable[Command]) -> str:
    """Render a command log as text, one command per line."""
    return "".join(f"{cmd.describe()}\n" for cmd in log)


@define(frozen=True, slots=True)
class RowOpened:
    bank: int
    row: int
    time: int


@define(frozen=True, slots=True)
class RowClosed:
    """A row was precharged. ``t_agg_on`` is the measured on-time."""

    bank: int
    row: int
    opened_at: int
    closed_at: int

    @property
    def t_agg_on(self) -> int:
        return self.closed_at - self.opened_at


@define(frozen=True, slots=True)
class RefreshPerformed:
    rank: int
    ref_index: int
    time: int


DeviceEvent = RowOpened | RowClosed | RefreshPerformed


# 🔨💾🔚
