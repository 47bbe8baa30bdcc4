#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""DRAM geometry, timing, command legality and refresh slicing."""

from __future__ import annotations

from disturbsim.dram.commands import (
    Command,
    DeviceEvent,
    RefreshPerformed,
    RowClosed,
    RowOpened,
    format_command_log,
)
from disturbsim.dram.device import BankState, DramDevice, Verdict, first_violation, replay
from disturbsim.dram.geometry import DramAddress, Geometry
from disturbsim.dram.refresh import rows_refreshed_by, rows_refreshed_by_burst
from disturbsim.dram.timing import TimingParams

__all__ = [
    "BankState",
    "Command",
    "DeviceEvent",
    "DramAddress",
    "DramDevice",
    "Geometry",
    "RefreshPerformed",
    "RowClosed",
    "RowOpened",
    "TimingParams",
    "Verdict",
    "first_violation",
    "format_command_log",
    "replay",
    "rows_refreshed_by",
    "rows_refreshed_by_burst",
]

# 🔨💾🔚
