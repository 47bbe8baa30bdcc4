#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Graphene: Misra-Gries aggressor tracking with threshold-triggered preventive refresh."""

from __future__ import annotations

import math
from typing import Any

from attrs import define, field

from disturbsim.config.defaults import DEFAULT_BLAST_RADIUS
from disturbsim.dram.timing import TimingParams
from disturbsim.errors import ConfigurationError
from disturbsim.mitigation.base import Mitigation, neighbor_targets


def graphene_table_size(threshold: int, timing: TimingParams) -> int:
    """Entries needed so no row can reach ``threshold`` untracked within one reset window."""
    return math.ceil((timing.tREFW / timing.tRC) / threshold)


@define(slots=True)
class GrapheneTracker:
    """Counter table of one bank.

    Counts are kept in buckets keyed by estimated count so the entry to replace
    (one whose estimate equals the spillover counter) is found in O(1).
    Estimates never undercount: ``true <= estimate <= true + spillover`` for
    resident rows and ``true <= spillover`` for the rest.
    """

    threshold: int
    capacity: int
    reset_period: int
    counts: dict[int, int] = field(factory=dict)
    buckets: dict[int, dict[int, None]] = field(factory=dict)
    spillover: int = 0
    window: int = 0
    triggers: int = 0

    def __attrs_post_init__(self) -> None:
        if self.threshold < 1:
            raise ConfigurationError("graphene_T", "must be >= 1")
        if self.capacity < 1:
            raise ConfigurationError("graphene_T", "table capacity must be >= 1")

    def estimate(self, row: int) -> int:
        return self.counts.get(row, self.spillover)

    def reset(self) -> None:
        self.counts.clear()
        self.buckets.clear()
        self.spillover = 0

    def _move(self, row: int, old: int | None, new: int) -> None:
        if old is not None:
            bucket = self.buckets[old]
            del bucket[row]
            if not bucket:
                del self.buckets[old]
        self.buckets.setdefault(new, {})[row] = None
        self.counts[row] = new

    def observe(self, row: int, time: int) -> bool:
        """Count one ACT; True when the estimate crosses a multiple of the threshold."""
        window = time // self.reset_period
        if window != self.window:
            self.window = window
            self.reset()

        current = self.counts.get(row)
        if current is not None:
            before, after = current, current + 1
            self._move(row, current, after)
        elif len(self.counts) < self.capacity:
            before, after = self.spillover, self.spillover + 1
            self._move(row, None, after)
        elif self.spillover in self.buckets:
            bucket = self.buckets[self.spillover]
            evicted = next(iter(bucket))
            del bucket[evicted]
            if not bucket:
                del self.buckets[self.spillover]
            del self.counts[evicted]
            before, after = self.spillover, self.spillover + 1
            self._move(row, None, after)
        else:
            # Every resident outranks the spillover; the row's estimate rises with it
            before, after = self.spillover, self.spillover + 1
            self.spillover = after

        crossed = after // self.threshold > before // self.threshold
        if crossed:
            self.triggers += 1
        return crossed


def graphene_observe(tracker: GrapheneTracker, row: int, time: int, radius: int, rows: int) -> list[int]:
    """Misra-Gries update; victims of ``row`` when its estimate crosses a multiple of T."""
    if tracker.observe(row, time):
        return neighbor_targets(row, radius, rows)
    return []


class GrapheneMitigation(Mitigation):
    """Graphene trackers, one per bank, created on first use."""

    name = "graphene"

    def __init__(self, threshold: int, timing: TimingParams, rows: int, blast_radius: int = DEFAULT_BLAST_RADIUS) -> None:
        if blast_radius < 1:
            raise ConfigurationError("blast_radius", "must be >= 1")
        self.threshold = threshold
        self.capacity = graphene_table_size(threshold, timing)
        self.reset_period = timing.tREFW
        self.rows = rows
        self.blast_radius = blast_radius
        self.trackers: dict[int, GrapheneTracker] = {}
        self.targets_issued = 0

    def tracker(self, bank: int) -> GrapheneTracker:
        tracker = self.trackers.get(bank)
        if tracker is None:
            tracker = GrapheneTracker(self.threshold, self.capacity, self.reset_period)
            self.trackers[bank] = tracker
        return tracker

    def on_activate(self, bank: int, row: int, time: int) -> list[int]:
        targets = graphene_observe(self.tracker(bank), row, time, self.blast_radius, self.rows)
        self.targets_issued += len(targets)
        return targets

    def stats(self) -> dict[str, Any]:
        return {
            "graphene_T": self.threshold,
            "table_entries": self.capacity,
            "triggers": sum(t.triggers for t in self.trackers.values()),
            "targets": self.targets_issued,
        }


# 🔨💾🔚
