#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Round-robin refresh slicing: which rows each REF restores."""

from __future__ import annotations

from collections.abc import Iterable
import math

from disturbsim.dram.commands import RefreshPerformed
from disturbsim.dram.timing import TimingParams


def rows_per_ref(rows: int, timing: TimingParams) -> int:
    return math.ceil(rows / timing.refresh_slots)


def rows_refreshed_by(ref: RefreshPerformed | int, rows: int, timing: TimingParams) -> range:
    """Physical rows (in every bank of the rank) restored by one REF.

    Slice ``i`` covers rows ``[i * n, (i + 1) * n)`` where ``n = ceil(rows / slots)``;
    every row is covered exactly once per ``tREFW / tREFI`` consecutive REFs.
    """
    index = ref.ref_index if isinstance(ref, RefreshPerformed) else ref
    n = rows_per_ref(rows, timing)
    start = (index % timing.refresh_slots) * n
    return range(min(start, rows), min(start + n, rows))


def rows_refreshed_by_burst(refs: Iterable[RefreshPerformed | int], rows: int, timing: TimingParams) -> set[int]:
    """Union of the slices of a burst of (postponed) REFs."""
    covered: set[int] = set()
    for ref in refs:
        covered.update(rows_refreshed_by(ref, rows, timing))
    return covered


def refresh_slot_of(row: int, rows: int, timing: TimingParams) -> int:
    """Index within the refresh window of the REF that restores ``row``."""
    return row // rows_per_ref(rows, timing)


# 🔨💾🔚
