#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Interface between the controller and read-disturbance defenses."""

from __future__ import annotations

from typing import Any


class Mitigation:
    """A defense observing activations and refreshes.

    Rows are physical rows within a flat bank. Targets returned from
    ``on_activate`` become preventive refreshes queued on that bank; targets
    from ``on_refresh`` are restored as part of the REF itself.
    """

    name = "none"

    def on_activate(self, bank: int, row: int, time: int) -> list[int]:
        return []

    def on_refresh(self, banks: range, time: int) -> list[tuple[int, int]]:
        return []

    def stats(self) -> dict[str, Any]:
        return {}


class NoMitigation(Mitigation):
    """Unprotected device."""


def neighbor_targets(row: int, radius: int, rows: int) -> list[int]:
    """Rows within ``radius`` of ``row`` on both sides, nearest first, clipped to the bank."""
    targets: list[int] = []
    for distance in range(1, radius + 1):
        for victim in (row - distance, row + distance):
            if 0 <= victim < rows:
                targets.append(victim)
    return targets


# 🔨💾🔚
