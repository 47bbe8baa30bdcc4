#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Tests for direct-drive logs and request-trace pattern generators."""

import pytest

from disturbsim.controller import RowPolicy, run_trace
from disturbsim.dram import Geometry, TimingParams, first_violation
from disturbsim.errors import ConfigurationError, ContractViolationError, InfeasiblePatternError
from disturbsim.mitigation import build_mitigation
from disturbsim.patterns import (
    PatternSpec,
    adversarial_trace,
    aggressor_rows,
    dummy_rows,
    gen_direct,
    gen_hot_bursts,
    gen_many_sided,
    gen_mixed_workload,
    gen_onoff_trace,
    gen_rowhammer,
    gen_trr_bypass,
    held_on_time,
    max_activations,
    read_spacing,
    reads_for_on_time,
)
from disturbsim.types import BypassVariant, CommandKind, PatternKind


class TestPatternSpec:
    """Field validation and derived on/off times."""

    def test_counts_must_be_positive(self) -> None:
        with pytest.raises(ConfigurationError) as exc_info:
            PatternSpec(num_reads=0)
        assert exc_info.value.config_key == "pattern.num_reads"

    def test_onoff_needs_delta(self) -> None:
        with pytest.raises(ConfigurationError) as exc_info:
            PatternSpec(kind=PatternKind.ONOFF)
        assert exc_info.value.config_key == "pattern.delta_t_a2a_ns"

    def test_on_fraction_range(self) -> None:
        with pytest.raises(ConfigurationError):
            PatternSpec(kind=PatternKind.ONOFF, delta_t_a2a=100, on_fraction=1.5)

    def test_onoff_times_sum_to_a2a(self, timing: TimingParams) -> None:
        """tAggON + tAggOFF = tA2A = delta + tRAS + tRP."""
        spec = PatternSpec(kind=PatternKind.ONOFF, delta_t_a2a=1_000, on_fraction=0.25)
        assert spec.onoff_times(timing) == (286, 765)
        assert sum(spec.onoff_times(timing)) == 1_000 + timing.tRAS + timing.tRP

    def test_check_rejects_short_on_time(self, timing: TimingParams) -> None:
        with pytest.raises(ConfigurationError) as exc_info:
            PatternSpec(t_agg_on=20).check(timing)
        assert exc_info.value.config_key == "pattern.t_agg_on_ns"

    def test_check_rejects_far_victim(self, timing: TimingParams, small_geometry: Geometry) -> None:
        with pytest.raises(ConfigurationError) as exc_info:
            PatternSpec(victim_row=5_000).check(timing, small_geometry)
        assert exc_info.value.config_key == "pattern.victim_row"


class TestDirect:
    """ACT/PRE logs driven straight at the device."""

    def test_double_sided_alternates(self, timing: TimingParams, geometry: Geometry) -> None:
        """Double-sided logs alternate the two aggressors and replay legally."""
        spec = PatternSpec(kind=PatternKind.DOUBLE_SIDED, t_agg_on=100, activations=4)
        log = gen_direct(spec, timing, geometry)
        acts = [c for c in log if c.kind is CommandKind.ACT]
        assert [c.address.row for c in acts] == [29_999, 30_001, 29_999, 30_001]
        assert [c.time for c in acts] == [0, 115, 230, 345]
        assert first_violation(log, geometry, timing) is None

    def test_onoff_gap(self, timing: TimingParams) -> None:
        """On/off patterns hold for tAggON and wait tAggOFF."""
        spec = PatternSpec(kind=PatternKind.ONOFF, delta_t_a2a=1_000, on_fraction=0.25, activations=2)
        log = gen_direct(spec, timing)
        assert [c.time for c in log] == [0, 286, 1_051, 1_337]

    def test_budget(self, timing: TimingParams) -> None:
        """Activations beyond the budget are infeasible."""
        spec = PatternSpec(t_agg_on=1_000, budget_ns=10_000)
        assert max_activations(spec, timing) == 9
        with pytest.raises(InfeasiblePatternError):
            gen_direct(spec.with_activations(10), timing)

    def test_rejects_trace_patterns(self, timing: TimingParams) -> None:
        with pytest.raises(ContractViolationError):
            gen_direct(PatternSpec(kind=PatternKind.TRR_BYPASS), timing)

    def test_edge_victim(self, geometry: Geometry) -> None:
        """Single-sided falls back to the upper row; double-sided needs both."""
        assert aggressor_rows(PatternSpec(victim_row=0), geometry) == [1]
        with pytest.raises(ContractViolationError):
            aggressor_rows(PatternSpec(kind=PatternKind.DOUBLE_SIDED, victim_row=0), geometry)

    def test_rowhammer_runs_at_trc(self, timing: TimingParams) -> None:
        log = gen_rowhammer(100, 3, timing)
        assert [c.time for c in log] == [0, 36, 51, 87, 102, 138]


class TestTraceHelpers:
    def test_reads_for_on_time(self, timing: TimingParams) -> None:
        """The fewest reads whose group holds the row at least that long."""
        reads = reads_for_on_time(500, 15, timing)
        assert held_on_time(reads, 15, timing) >= 500
        assert held_on_time(reads - 1, 15, timing) < 500
        assert reads_for_on_time(10, 15, timing) == 1

    def test_read_spacing_by_variant(self, timing: TimingParams) -> None:
        """Interleaved flushing doubles the spacing of same-row reads."""
        batched = PatternSpec(kind=PatternKind.TRR_BYPASS)
        interleaved = PatternSpec(kind=PatternKind.TRR_BYPASS, variant=BypassVariant.INTERLEAVED_FLUSH)
        assert read_spacing(batched, timing) == timing.tCOL
        assert read_spacing(interleaved, timing) == 2 * timing.tCOL


class TestTrrBypass:
    """The TRR-bypassing request trace."""

    def test_request_counts(self, timing: TimingParams, geometry: Geometry) -> None:
        """Per iteration: dummies first, then aggressor groups, then the remaining dummy rounds."""
        spec = PatternSpec(kind=PatternKind.TRR_BYPASS, num_aggr_acts=3, num_reads=2, iterations=5)
        trace = gen_trr_bypass(spec, geometry, timing)
        assert len(trace) == 5 * (16 + 3 * 2 * 2 + 3 * 16)
        assert trace.duration == 5 * timing.tREFI
        assert not trace.warnings

    def test_dummies_keep_their_distance(self, geometry: Geometry) -> None:
        spec = PatternSpec(kind=PatternKind.TRR_BYPASS)
        rows = dummy_rows(spec, geometry)
        assert len(set(rows)) == 16
        assert min(abs(r - spec.victim_row) for r in rows) >= 100

    def test_long_iterations_are_spread(self, timing: TimingParams, geometry: Geometry) -> None:
        """An iteration longer than tREFI starts every other interval and warns."""
        spec = PatternSpec(kind=PatternKind.TRR_BYPASS, num_aggr_acts=3, num_reads=64, iterations=4)
        trace = gen_trr_bypass(spec, geometry, timing)
        assert trace.warnings
        assert trace.duration == 4 * 2 * timing.tREFI

    def test_conventional_double_sided(self, timing: TimingParams, geometry: Geometry) -> None:
        """One read and no dummies is classic double-sided hammering."""
        spec = PatternSpec(kind=PatternKind.TRR_BYPASS, num_dummy=0, dummy_acts=0, num_aggr_acts=5, iterations=1)
        rows = [r.address.row for r in gen_trr_bypass(spec, geometry, timing).requests]
        assert rows == [29_999, 30_001] * 5

    def test_wrong_kind(self, timing: TimingParams, geometry: Geometry) -> None:
        with pytest.raises(ContractViolationError):
            gen_trr_bypass(PatternSpec(), geometry, timing)

    def _attack(self, num_reads: int, num_aggr_acts: int, model) -> int:
        timing, geometry = TimingParams(), Geometry()
        spec = PatternSpec(kind=PatternKind.TRR_BYPASS, num_reads=num_reads, num_aggr_acts=num_aggr_acts)
        trace = gen_trr_bypass(spec, geometry, timing)
        trr = build_mitigation("trr", rows=geometry.rows, timing=timing, seed=0)
        report = run_trace(trace.requests, RowPolicy.open_page(), trr, model, trace.duration)
        return report.rows_with_bitflips

    @pytest.mark.slow
    @pytest.mark.parametrize("num_aggr_acts", [1, 2, 3])
    def test_single_read_stays_below_threshold(self, model, num_aggr_acts: int) -> None:
        """Short activations hidden from TRR still cannot reach the hammer threshold."""
        assert self._attack(1, num_aggr_acts, model) == 0

    @pytest.mark.slow
    @pytest.mark.parametrize(("num_reads", "num_aggr_acts"), [(16, 3), (32, 3), (32, 2), (64, 2)])
    def test_long_activations_bypass_trr(self, model, num_reads: int, num_aggr_acts: int) -> None:
        """Holding the aggressors open with more reads flips the victim despite TRR."""
        assert self._attack(num_reads, num_aggr_acts, model) > 0


class TestWorkloads:
    """Benign traffic and adversarial picks."""

    def test_mixed_workload_is_reproducible(self, geometry: Geometry) -> None:
        a = gen_mixed_workload(500, 20.0, geometry, seed=3)
        b = gen_mixed_workload(500, 20.0, geometry, seed=3)
        assert a == b
        times = [r.arrival_time for r in a.requests]
        assert times == sorted(times)
        assert a.duration > times[-1]

    def test_hot_bursts(self, geometry: Geometry) -> None:
        trace = gen_hot_bursts(3, 60, 4_000, geometry)
        assert len(trace) == 180
        assert trace.requests[60].arrival_time == 4_000
        assert {r.address.row for r in trace.requests} == {1_000}

    def test_overlapping_bursts(self, geometry: Geometry) -> None:
        with pytest.raises(ConfigurationError):
            gen_hot_bursts(2, 100, 50, geometry)

    def test_many_sided_rows(self, timing: TimingParams, geometry: Geometry) -> None:
        spec = PatternSpec(kind=PatternKind.MANY_SIDED, num_aggressors=4, num_dummy=0, dummy_acts=0, iterations=1)
        rows = [r.address.row for r in gen_many_sided(spec, geometry, timing).requests]
        assert rows == [29_999, 30_001, 30_003, 30_005]

    def test_onoff_trace(self, timing: TimingParams, geometry: Geometry) -> None:
        """Each activation is one aggressor group plus one separator group."""
        spec = PatternSpec(kind=PatternKind.ONOFF, delta_t_a2a=1_000, on_fraction=0.5, activations=10)
        trace = gen_onoff_trace(spec, geometry, timing)
        rows = {r.address.row for r in trace.requests}
        assert rows == {29_999, 30_100}
        assert len(trace) == 10 * (35 + 31)

    def test_adversarial_is_seeded(self, timing: TimingParams, geometry: Geometry) -> None:
        a = adversarial_trace(11, geometry, timing, windows=2)
        b = adversarial_trace(11, geometry, timing, windows=2)
        assert a == b

    @pytest.mark.parametrize("family", ["double_sided", "trr_bypass", "onoff", "many_sided"])
    def test_adversarial_families(self, timing: TimingParams, geometry: Geometry, family: str) -> None:
        trace = adversarial_trace(0, geometry, timing, windows=2, family=family)
        assert trace.description == family
        assert len(trace) > 0

    def test_unknown_family(self, timing: TimingParams, geometry: Geometry) -> None:
        with pytest.raises(ConfigurationError):
            adversarial_trace(0, geometry, timing, family="half_double")


# 🔨💾🔚
