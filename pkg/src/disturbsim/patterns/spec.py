#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Access-pattern descriptions shared by the command-log and request-trace generators."""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal

from attrs import define, evolve, field

from disturbsim.config.defaults import (
    DEFAULT_BUDGET_NS,
    DEFAULT_DUMMY_ACTS,
    DEFAULT_DUMMY_MIN_DISTANCE,
    DEFAULT_ITERATIONS,
    DEFAULT_NUM_DUMMY,
    DEFAULT_SYNC_OFFSET_NS,
    DEFAULT_TRAS,
    DEFAULT_VICTIM_ROW,
)
from disturbsim.dram.geometry import Geometry
from disturbsim.dram.timing import TimingParams
from disturbsim.errors import ConfigurationError
from disturbsim.types import BypassVariant, PatternKind


def _round_half_up(value: float) -> int:
    return int(Decimal(repr(value)).quantize(Decimal(1), rounding=ROUND_HALF_UP))


def _pattern_kind(value: object) -> PatternKind:
    return value if isinstance(value, PatternKind) else PatternKind(str(value))


def _variant(value: object) -> BypassVariant:
    return value if isinstance(value, BypassVariant) else BypassVariant(str(value))


@define(frozen=True, slots=True)
class PatternSpec:
    """One access pattern.

    ``activations`` is the total aggressor activation count for direct-drive
    patterns (both aggressors together when double-sided). The request-trace
    families use ``num_aggr_acts``/``num_reads``/``num_dummy`` per iteration,
    one iteration per refresh interval.
    """

    kind: PatternKind = field(default=PatternKind.SINGLE_SIDED, converter=_pattern_kind)
    victim_row: int = DEFAULT_VICTIM_ROW
    bank: int = 0
    t_agg_on: int = DEFAULT_TRAS
    activations: int | None = None
    delta_t_a2a: int | None = None
    on_fraction: float = 0.0
    num_aggr_acts: int = 1
    num_reads: int = 1
    num_dummy: int = DEFAULT_NUM_DUMMY
    dummy_acts: int = DEFAULT_DUMMY_ACTS
    dummy_min_distance: int = DEFAULT_DUMMY_MIN_DISTANCE
    num_aggressors: int = 2
    variant: BypassVariant = field(default=BypassVariant.BATCHED_FLUSH, converter=_variant)
    iterations: int = DEFAULT_ITERATIONS
    budget_ns: int = DEFAULT_BUDGET_NS
    sync_offset_ns: int = DEFAULT_SYNC_OFFSET_NS

    def __attrs_post_init__(self) -> None:
        for name in ("num_aggr_acts", "num_reads", "iterations", "num_aggressors"):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"pattern.{name}", "must be >= 1")
        for name in ("num_dummy", "dummy_acts", "sync_offset_ns", "victim_row", "bank"):
            if getattr(self, name) < 0:
                raise ConfigurationError(f"pattern.{name}", "must be >= 0")
        if self.activations is not None and self.activations < 1:
            raise ConfigurationError("pattern.activations", "must be >= 1")
        if not 0.0 <= self.on_fraction <= 1.0:
            raise ConfigurationError("pattern.on_fraction", "must lie in [0, 1]")
        if self.kind is PatternKind.ONOFF and self.delta_t_a2a is None:
            raise ConfigurationError("pattern.delta_t_a2a_ns", "onoff patterns need delta_t_a2a_ns")
        if self.budget_ns < 1:
            raise ConfigurationError("pattern.budget_ns", "must be >= 1")

    def check(self, timing: TimingParams, geometry: Geometry | None = None) -> None:
        """Timing- and geometry-dependent invariants."""
        if self.t_agg_on < timing.tRAS:
            raise ConfigurationError("pattern.t_agg_on_ns", f"must be >= tRAS ({timing.tRAS} ns)")
        if self.budget_ns > timing.tREFW:
            raise ConfigurationError("pattern.budget_ns", f"must not exceed tREFW ({timing.tREFW} ns)")
        if self.dummy_min_distance < DEFAULT_DUMMY_MIN_DISTANCE:
            raise ConfigurationError(
                "pattern.dummy_min_distance", f"dummy rows must sit >= {DEFAULT_DUMMY_MIN_DISTANCE} rows from the victim"
            )
        if geometry is not None:
            if not 0 <= self.victim_row < geometry.rows:
                raise ConfigurationError("pattern.victim_row", f"must be < {geometry.rows}")
            if not 0 <= self.bank < geometry.total_banks:
                raise ConfigurationError("pattern.bank", f"must be < {geometry.total_banks}")
            if self.num_reads > geometry.columns:
                raise ConfigurationError("pattern.num_reads", f"must be <= {geometry.columns} columns")

    def onoff_times(self, timing: TimingParams) -> tuple[int, int]:
        """(tAggON, tAggOFF) of an onoff pattern; their sum is tA2A."""
        delta = self.delta_t_a2a or 0
        on = _round_half_up(self.on_fraction * delta + timing.tRAS)
        off = _round_half_up((1.0 - self.on_fraction) * delta + timing.tRP)
        return on, off

    def on_off(self, timing: TimingParams) -> tuple[int, int]:
        """Per-activation on-time and the gap before the next activation."""
        if self.kind is PatternKind.ONOFF:
            return self.onoff_times(timing)
        return self.t_agg_on, timing.tRP

    def with_activations(self, activations: int) -> PatternSpec:
        return evolve(self, activations=activations)

    def with_t_agg_on(self, t_agg_on: int) -> PatternSpec:
        return evolve(self, t_agg_on=t_agg_on)


# 🔨💾🔚
