#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""In-DRAM Target Row Refresh: a small sampler refreshed at REF time."""

from __future__ import annotations

from typing import Any

from attrs import define, field

from disturbsim.config.defaults import DEFAULT_TRR_CAPACITY
from disturbsim.errors import ConfigurationError
from disturbsim.mitigation.base import Mitigation, neighbor_targets


@define(slots=True)
class TrrSampler:
    """Tracks the first ``capacity`` distinct rows activated since the last REF."""

    capacity: int = DEFAULT_TRR_CAPACITY
    tracked: dict[int, None] = field(factory=dict)
    windows: int = 0
    untracked_acts: int = 0

    def __attrs_post_init__(self) -> None:
        if self.capacity < 0:
            raise ConfigurationError("trr_capacity", "must be >= 0")

    def is_tracked(self, row: int) -> bool:
        return row in self.tracked


def trr_observe(sampler: TrrSampler, row: int) -> None:
    if row in sampler.tracked:
        return
    if len(sampler.tracked) < sampler.capacity:
        sampler.tracked[row] = None
    else:
        sampler.untracked_acts += 1


def trr_on_ref(sampler: TrrSampler, rows: int) -> list[int]:
    """Immediate neighbors of every tracked row; clears the sampler."""
    targets: list[int] = []
    for row in sampler.tracked:
        targets.extend(neighbor_targets(row, 1, rows))
    sampler.tracked.clear()
    sampler.windows += 1
    return targets


class TrrMitigation(Mitigation):
    """One TRR sampler per bank."""

    name = "trr"

    def __init__(self, rows: int, capacity: int = DEFAULT_TRR_CAPACITY) -> None:
        self.rows = rows
        self.capacity = capacity
        self.samplers: dict[int, TrrSampler] = {}
        self.refreshed = 0

    def sampler(self, bank: int) -> TrrSampler:
        sampler = self.samplers.get(bank)
        if sampler is None:
            sampler = TrrSampler(self.capacity)
            self.samplers[bank] = sampler
        return sampler

    def on_activate(self, bank: int, row: int, time: int) -> list[int]:
        trr_observe(self.sampler(bank), row)
        return []

    def on_refresh(self, banks: range, time: int) -> list[tuple[int, int]]:
        targets: list[tuple[int, int]] = []
        for bank in banks:
            sampler = self.samplers.get(bank)
            if sampler is not None:
                targets.extend((bank, row) for row in trr_on_ref(sampler, self.rows))
        self.refreshed += len(targets)
        return targets

    def stats(self) -> dict[str, Any]:
        untracked = sum(s.untracked_acts for s in self.samplers.values())
        return {"trr_capacity": self.capacity, "targets": self.refreshed, "untracked_acts": untracked}


# 🔨💾🔚
