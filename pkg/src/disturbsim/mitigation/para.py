#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""PARA: refresh one adjacent row of each activated row with probability p."""

from __future__ import annotations

from typing import Any

from attrs import define, field
import numpy as np

from disturbsim.config.defaults import PARA_RANDOM_BLOCK
from disturbsim.errors import ConfigurationError
from disturbsim.mitigation.base import Mitigation
from disturbsim.seeding import rng_for


@define(slots=True)
class ParaTracker:
    """Per-ACT Bernoulli(p) decision with a seeded stream of uniforms.

    One uniform ``u`` decides both whether to refresh (``u < p``) and which
    side (lower when ``u < p / 2``), so each side has probability ``p / 2``.
    """

    p: float
    rng: np.random.Generator
    _block: np.ndarray = field(init=False, repr=False)
    _cursor: int = field(init=False, default=PARA_RANDOM_BLOCK, repr=False)
    draws: int = 0
    hits: int = 0

    def __attrs_post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise ConfigurationError("para_p", f"must lie in [0, 1], got {self.p}")
        self._block = np.empty(0)

    def next_uniform(self) -> float:
        if self._cursor >= len(self._block):
            self._block = self.rng.random(PARA_RANDOM_BLOCK)
            self._cursor = 0
        u = float(self._block[self._cursor])
        self._cursor += 1
        return u


def para_observe(tracker: ParaTracker, row: int, rows: int) -> list[int]:
    """With probability p, one immediate neighbor of ``row``; else nothing."""
    tracker.draws += 1
    if tracker.p <= 0.0:
        return []
    u = tracker.next_uniform()
    if u >= tracker.p:
        return []
    tracker.hits += 1
    side = -1 if u < tracker.p / 2 else 1
    target = row + side
    if not 0 <= target < rows:
        target = row - side
    return [target] if 0 <= target < rows else []


class ParaMitigation(Mitigation):
    """PARA with one seeded tracker per bank."""

    name = "para"

    def __init__(self, p: float, rows: int, seed: int) -> None:
        if not 0.0 <= p <= 1.0:
            raise ConfigurationError("para_p", f"must lie in [0, 1], got {p}")
        self.p = p
        self.rows = rows
        self.seed = seed
        self.trackers: dict[int, ParaTracker] = {}

    def tracker(self, bank: int) -> ParaTracker:
        tracker = self.trackers.get(bank)
        if tracker is None:
            tracker = ParaTracker(self.p, rng_for(self.seed, f"para/bank{bank}"))
            self.trackers[bank] = tracker
        return tracker

    def on_activate(self, bank: int, row: int, time: int) -> list[int]:
        return para_observe(self.tracker(bank), row, self.rows)

    def stats(self) -> dict[str, Any]:
        draws = sum(t.draws for t in self.trackers.values())
        hits = sum(t.hits for t in self.trackers.values())
        return {"para_p": self.p, "activations": draws, "targets": hits}


# 🔨💾🔚
