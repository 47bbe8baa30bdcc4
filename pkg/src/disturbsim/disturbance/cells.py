#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Sampled populations of hammer-, press- and retention-vulnerable cells per row."""

from __future__ import annotations

from attrs import define, field
import numpy as np

from disturbsim.config.defaults import (
    DEFAULT_HAMMER_CELLS_MEAN,
    DEFAULT_MULTIPLIER_SIGMA,
    DEFAULT_PRESS_CLUSTER_SIZE_MEAN,
    DEFAULT_PRESS_CLUSTERS_MEAN,
    DEFAULT_PRESS_HAMMER_OVERLAP,
    DEFAULT_PRESS_RETENTION_OVERLAP,
    DEFAULT_RETENTION_BUDGET_NS_80C,
    DEFAULT_RETENTION_CELLS_MEAN,
    HOT_TEMPERATURE_C,
    RETENTION_DOUBLING_C,
    WORD_BITS,
)
from disturbsim.errors import ConfigurationError
from disturbsim.seeding import rng_for
from disturbsim.types import FlipDirection, Mechanism


def _ranges(value: object) -> tuple[tuple[int, int], ...]:
    return tuple((int(a), int(b)) for a, b in value)  # type: ignore[attr-defined]


@define(frozen=True, slots=True)
class CellConfig:
    """Sampling parameters of the per-row cell populations."""

    hammer_cells_mean: float = DEFAULT_HAMMER_CELLS_MEAN
    press_clusters_mean: float = DEFAULT_PRESS_CLUSTERS_MEAN
    press_cluster_size_mean: float = DEFAULT_PRESS_CLUSTER_SIZE_MEAN
    retention_cells_mean: float = DEFAULT_RETENTION_CELLS_MEAN
    multiplier_sigma: float = DEFAULT_MULTIPLIER_SIGMA
    press_hammer_overlap: float = DEFAULT_PRESS_HAMMER_OVERLAP
    press_retention_overlap: float = DEFAULT_PRESS_RETENTION_OVERLAP
    retention_budget_ns_80c: int = DEFAULT_RETENTION_BUDGET_NS_80C
    anti_cell_rows: tuple[tuple[int, int], ...] = field(default=(), converter=_ranges)

    def __attrs_post_init__(self) -> None:
        for name in ("hammer_cells_mean", "press_clusters_mean", "press_cluster_size_mean", "retention_cells_mean"):
            if getattr(self, name) < 0:
                raise ConfigurationError(f"cells.{name}", "must be >= 0")
        if self.multiplier_sigma < 0:
            raise ConfigurationError("cells.multiplier_sigma", "must be >= 0")
        for name in ("press_hammer_overlap", "press_retention_overlap"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ConfigurationError(f"cells.{name}", "must lie in [0, 1]")
        if self.retention_budget_ns_80c <= 0:
            raise ConfigurationError("cells.retention_budget_ns_80c", "must be positive")
        for start, end in self.anti_cell_rows:
            if start < 0 or end <= start:
                raise ConfigurationError("cells.anti_cell_rows", f"invalid row range [{start}, {end})")


@define(frozen=True, slots=True)
class VulnerableCell:
    """A cell flipping once its row's dose reaches threshold x ``multiplier``."""

    column: int
    multiplier: float


@define(frozen=True, slots=True)
class RetentionCell:
    """A cell flipping once ``budget_ns`` at 80 °C (scaled by temperature) pass without refresh."""

    column: int
    budget_ns_80c: float

    def budget_at(self, temperature: float) -> float:
        return self.budget_ns_80c * 2.0 ** ((HOT_TEMPERATURE_C - temperature) / RETENTION_DOUBLING_C)


@define(frozen=True, slots=True)
class CellProfile:
    """Vulnerable cells of one row."""

    hammer_cells: tuple[VulnerableCell, ...]
    press_cells: tuple[VulnerableCell, ...]
    retention_cells: tuple[RetentionCell, ...]
    anti_cell: bool = False

    def direction(self, mechanism: Mechanism) -> FlipDirection:
        """Hammer flips 0->1 and press/retention 1->0 in true-cell rows; anti-cell rows reverse."""
        true_dir = FlipDirection.ZERO_TO_ONE if mechanism is Mechanism.HAMMER else FlipDirection.ONE_TO_ZERO
        return true_dir.reversed() if self.anti_cell else true_dir

    def columns(self, mechanism: Mechanism) -> frozenset[int]:
        if mechanism is Mechanism.HAMMER:
            return frozenset(c.column for c in self.hammer_cells)
        if mechanism is Mechanism.PRESS:
            return frozenset(c.column for c in self.press_cells)
        return frozenset(c.column for c in self.retention_cells)


def _multipliers(rng: np.random.Generator, count: int, sigma: float) -> np.ndarray:
    if count == 0:
        return np.empty(0)
    raw = np.exp(sigma * rng.standard_normal(count))
    return raw / raw.min()


@define(slots=True)
class CellSampler:
    """Reproducible per-row cell profiles: a pure function of (seed, bank, row)."""

    seed: int
    columns: int
    config: CellConfig = field(factory=CellConfig)
    _cache: dict[tuple[int, int], CellProfile] = field(factory=dict, init=False, repr=False)

    def is_anti_cell(self, row: int) -> bool:
        return any(start <= row < end for start, end in self.config.anti_cell_rows)

    def profile(self, bank: int, row: int) -> CellProfile:
        key = (bank, row)
        cached = self._cache.get(key)
        if cached is None:
            cached = self._sample(bank, row)
            self._cache[key] = cached
        return cached

    def _sample(self, bank: int, row: int) -> CellProfile:
        cfg = self.config
        rng = rng_for(self.seed, f"cells/{bank}/{row}")
        columns = self.columns

        n_hammer = min(columns, 1 + int(rng.poisson(cfg.hammer_cells_mean)))
        hammer = [int(c) for c in rng.choice(columns, size=n_hammer, replace=False)]
        hammer_set = set(hammer)

        word_bits = min(WORD_BITS, columns)
        words = max(1, columns // word_bits)
        press: list[int] = []
        seen: set[int] = set()
        for _ in range(1 + int(rng.poisson(cfg.press_clusters_mean))):
            size = min(word_bits, 1 + int(rng.poisson(cfg.press_cluster_size_mean)))
            word = int(rng.integers(words))
            for bit in rng.choice(word_bits, size=size, replace=False):
                column = word * word_bits + int(bit)
                if column not in hammer_set and column not in seen:
                    seen.add(column)
                    press.append(column)
        if not press:
            free = [c for c in range(columns) if c not in hammer_set]
            if free:
                press.append(free[int(rng.integers(len(free)))])
                seen.add(press[0])
        # each press cell is independently also a hammer cell
        shared = rng.random(len(press)) < cfg.press_hammer_overlap
        hammer.extend(column for column, hit in zip(press, shared, strict=True) if hit)

        n_retention = min(1 + int(rng.poisson(cfg.retention_cells_mean)), columns - len(seen))
        retention: list[int] = []
        taken = set(seen)
        while len(retention) < n_retention:
            column = int(rng.integers(columns))
            if column not in taken:
                taken.add(column)
                retention.append(column)
        shared = rng.random(len(press)) < cfg.press_retention_overlap
        retention.extend(column for column, hit in zip(press, shared, strict=True) if hit)

        hammer_mult = _multipliers(rng, len(hammer), cfg.multiplier_sigma)
        press_mult = _multipliers(rng, len(press), cfg.multiplier_sigma)
        retention_mult = _multipliers(rng, len(retention), cfg.multiplier_sigma)

        return CellProfile(
            hammer_cells=tuple(VulnerableCell(c, float(m)) for c, m in zip(hammer, hammer_mult, strict=True)),
            press_cells=tuple(VulnerableCell(c, float(m)) for c, m in zip(press, press_mult, strict=True)),
            retention_cells=tuple(
                RetentionCell(c, float(m) * cfg.retention_budget_ns_80c)
                for c, m in zip(retention, retention_mult, strict=True)
            ),
            anti_cell=self.is_anti_cell(row),
        )


# 🔨💾🔚
