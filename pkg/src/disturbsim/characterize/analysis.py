#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Post-processing of bitflip sets and search results."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence

from attrs import define
import numpy as np

from disturbsim.config.defaults import ROWS_PER_REGION, WORD_BITS
from disturbsim.disturbance.faults import Bitflip
from disturbsim.dram.geometry import Geometry
from disturbsim.errors import ConfigurationError, ContractViolationError
from disturbsim.types import FlipDirection, Mechanism

ECC_BINS = ("1-2", "3-8", ">8")
ROW_PRESETS = ("first_middle_last", "first", "explicit")


def overlap(a: set[tuple[int, int, int]] | frozenset[tuple[int, int, int]], b: Iterable[tuple[int, int, int]]) -> float:
    """Fraction of cells in ``a`` also present in ``b``."""
    if not a:
        raise ContractViolationError("overlap", "reference cell set is empty")
    return len(a & set(b)) / len(a)


@define(frozen=True, slots=True)
class EccHistogram:
    """64-bit words binned by how many of their bits flipped."""

    bins: dict[str, int]
    max_per_word: int
    words: int

    def as_row(self) -> dict[str, int]:
        return {**self.bins, "max_per_word": self.max_per_word, "words": self.words}


def ecc_word_histogram(flips: Iterable[Bitflip], word_bits: int = WORD_BITS) -> EccHistogram:
    """Group flipped cells into consecutive ``word_bits``-bit words of each row."""
    if word_bits < 1:
        raise ContractViolationError("ecc_word_histogram", "word size must be >= 1")
    cells = {(f.bank, f.row, f.column) for f in flips}
    per_word = Counter((bank, row, column // word_bits) for bank, row, column in cells)
    bins = dict.fromkeys(ECC_BINS, 0)
    for count in per_word.values():
        if count <= 2:
            bins["1-2"] += 1
        elif count <= 8:
            bins["3-8"] += 1
        else:
            bins[">8"] += 1
    return EccHistogram(bins, max(per_word.values(), default=0), len(per_word))


def direction_fractions(flips: Iterable[Bitflip]) -> dict[str, dict[str, float]]:
    """Per mechanism, the share of flips in each direction."""
    counts: dict[Mechanism, Counter[FlipDirection]] = {}
    for flip in flips:
        counts.setdefault(flip.mechanism, Counter())[flip.direction] += 1
    result: dict[str, dict[str, float]] = {}
    for mechanism in sorted(counts, key=lambda m: m.value):
        total = sum(counts[mechanism].values())
        result[mechanism.value] = {d.value: counts[mechanism][d] / total for d in FlipDirection}
    return result


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log10(y) against log10(x)."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size < 2 or x.size != y.size:
        raise ContractViolationError("loglog_slope", "need at least two paired points")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ContractViolationError("loglog_slope", "values must be positive")
    slope, _ = np.polyfit(np.log10(x), np.log10(y), 1)
    return float(slope)


def select_rows(
    preset: str,
    geometry: Geometry,
    *,
    rows_per_region: int = ROWS_PER_REGION,
    explicit: Sequence[int] = (),
) -> list[int]:
    """Victim rows to test; every victim keeps a neighbor on both sides."""
    low, high = 1, geometry.rows - 2
    if preset == "explicit":
        rows = list(explicit)
        if not rows:
            raise ConfigurationError("search.rows", "explicit row preset needs at least one row")
        bad = [r for r in rows if not low <= r <= high]
        if bad:
            raise ConfigurationError("search.rows", f"rows {bad} lack a neighbor on both sides")
        return rows
    if rows_per_region < 1:
        raise ConfigurationError("search.rows_per_region", "must be >= 1")
    if preset == "first":
        starts = [low]
    elif preset == "first_middle_last":
        starts = [low, geometry.rows // 2 - rows_per_region // 2, high - rows_per_region + 1]
    else:
        raise ConfigurationError("search.row_preset", f"unknown preset '{preset}', expected one of {ROW_PRESETS}")
    selected: set[int] = set()
    for start in starts:
        selected.update(r for r in range(start, start + rows_per_region) if low <= r <= high)
    return sorted(selected)


# 🔨💾🔚
