#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Building blocks for request-trace patterns.

A *group* is a run of column-distinct reads to one row. Groups are spaced so
that, under an open-page controller, the row is activated on the group's
first read and precharged when the next group's first read arrives; a group
of ``n`` reads ``s`` ns apart holds its row open ``tRAS + (n - 1) * s``.
"""

from __future__ import annotations

from attrs import define

from disturbsim.controller.requests import MemoryRequest
from disturbsim.dram.geometry import Geometry
from disturbsim.dram.timing import TimingParams
from disturbsim.types import RequestKind


def group_period(reads: int, spacing: int, timing: TimingParams) -> int:
    """Time from a group's first read to the next group's first read."""
    return timing.tRC + (reads - 1) * spacing


def held_on_time(reads: int, spacing: int, timing: TimingParams) -> int:
    """Steady-state on-time of a group's row under open-page scheduling."""
    return timing.tRAS + (reads - 1) * spacing


def reads_for_on_time(on_time: int, spacing: int, timing: TimingParams) -> int:
    """Fewest reads whose group holds a row open at least ``on_time``."""
    extra = max(0, on_time - timing.tRAS)
    return 1 + -(-extra // spacing)


@define(frozen=True, slots=True)
class RequestTrace:
    requests: tuple[MemoryRequest, ...]
    duration: int
    warnings: tuple[str, ...] = ()
    description: str = ""

    def __len__(self) -> int:
        return len(self.requests)


class TraceBuilder:
    """Accumulates groups of reads to rows of one bank."""

    def __init__(self, geometry: Geometry, timing: TimingParams, bank: int = 0) -> None:
        self.geometry = geometry
        self.timing = timing
        self.base = geometry.bank_address(bank)
        self.requests: list[MemoryRequest] = []

    def group(self, physical_row: int, reads: int, start: int, spacing: int) -> int:
        """Append one group and return the start time of the next."""
        row = self.geometry.logical_row(physical_row)
        columns = self.geometry.columns
        for k in range(reads):
            address = self.base.with_row(row, k % columns)
            self.requests.append(MemoryRequest(start + k * spacing, RequestKind.READ, address, len(self.requests)))
        return start + group_period(reads, spacing, self.timing)

    def build(self, duration: int, warnings: list[str] | None = None, description: str = "") -> RequestTrace:
        return RequestTrace(tuple(self.requests), duration, tuple(warnings or ()), description)


# 🔨💾🔚
