#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Request traces beyond TRR bypass: many-sided, on/off, benign mixes and adversarial picks."""

from __future__ import annotations

from provide.foundation import logger

from disturbsim.config.defaults import DEFAULT_NUM_DUMMY
from disturbsim.controller.requests import MemoryRequest
from disturbsim.dram.geometry import Geometry
from disturbsim.dram.timing import TimingParams
from disturbsim.errors import ConfigurationError, ContractViolationError
from disturbsim.patterns.spec import PatternSpec
from disturbsim.patterns.traces import RequestTrace, TraceBuilder, reads_for_on_time
from disturbsim.patterns.trr_bypass import gen_trr_bypass, windowed_trace
from disturbsim.seeding import rng_for
from disturbsim.types import BypassVariant, PatternKind, RequestKind

ADVERSARIAL_FAMILIES = ("double_sided", "trr_bypass", "onoff", "many_sided")


def gen_many_sided(spec: PatternSpec, geometry: Geometry, timing: TimingParams) -> RequestTrace:
    """``num_aggressors`` rows at victim - 1 + 2i, each read ``num_reads`` times per round."""
    if spec.kind is not PatternKind.MANY_SIDED:
        raise ContractViolationError("gen_many_sided", f"expected a many_sided pattern, got '{spec.kind.value}'")
    spec.check(timing, geometry)
    aggressors = [spec.victim_row - 1 + 2 * i for i in range(spec.num_aggressors)]
    if aggressors[0] < 0 or aggressors[-1] >= geometry.rows:
        raise ConfigurationError("pattern.num_aggressors", f"{spec.num_aggressors} aggressors do not fit the bank")
    return windowed_trace(spec, geometry, timing, aggressors, [], "many_sided")


def gen_onoff_trace(spec: PatternSpec, geometry: Geometry, timing: TimingParams) -> RequestTrace:
    """Aggressor open for about tAggON, then a far row keeps the bank busy for about tAggOFF.

    Both are rounded up to whole read spacings; the off row is opened for
    ``tAggOFF - 2 * tRP`` so the aggressor's next activation lands on time.
    """
    if spec.kind is not PatternKind.ONOFF:
        raise ContractViolationError("gen_onoff_trace", f"expected an onoff pattern, got '{spec.kind.value}'")
    spec.check(timing, geometry)
    on, off = spec.onoff_times(timing)
    if off < timing.tRAS + 2 * timing.tRP:
        raise ConfigurationError(
            "pattern.on_fraction", f"tAggOFF {off} ns leaves no room for a separating row (needs >= tRAS + 2*tRP)"
        )
    spacing = timing.tCOL
    aggressor = spec.victim_row - 1 if spec.victim_row > 0 else spec.victim_row + 1
    separator = spec.victim_row + spec.dummy_min_distance
    if separator >= geometry.rows:
        separator = spec.victim_row - spec.dummy_min_distance
    if separator < 0:
        raise ConfigurationError("pattern.dummy_min_distance", "no separating row fits the bank")
    on_reads = min(geometry.columns, reads_for_on_time(on, spacing, timing))
    off_reads = min(geometry.columns, reads_for_on_time(off - 2 * timing.tRP, spacing, timing))

    builder = TraceBuilder(geometry, timing, spec.bank)
    start = spec.sync_offset_ns
    count = spec.activations or 1
    for _ in range(count):
        start = builder.group(aggressor, on_reads, start, spacing)
        start = builder.group(separator, off_reads, start, spacing)
    if start > spec.budget_ns:
        raise ContractViolationError("gen_onoff_trace", f"{count} activations need {start} ns, over the budget")
    return builder.build(start, description="onoff")


def gen_mixed_workload(
    count: int,
    mean_gap_ns: float,
    geometry: Geometry,
    seed: int,
    *,
    hot_fraction: float = 0.1,
    hot_rows: int = 8,
    write_fraction: float = 0.0,
) -> RequestTrace:
    """Benign random traffic: exponential inter-arrival gaps, a small hot-row set."""
    if count < 1 or mean_gap_ns <= 0:
        raise ConfigurationError("workload", "count must be >= 1 and mean_gap_ns > 0")
    rng = rng_for(seed, "workload/mixed")
    gaps = rng.exponential(mean_gap_ns, size=count)
    times = [int(t) for t in gaps.cumsum()]
    hot = rng.integers(0, geometry.rows, size=(hot_rows, 2))
    hot_pick = rng.random(count) < hot_fraction
    writes = rng.random(count) < write_fraction
    banks = rng.integers(0, geometry.total_banks, size=count)
    rows = rng.integers(0, geometry.rows, size=count)
    columns = rng.integers(0, geometry.columns, size=count)
    choice = rng.integers(0, hot_rows, size=count)

    requests: list[MemoryRequest] = []
    for i in range(count):
        if hot_pick[i]:
            bank, row = int(hot[choice[i], 0]) % geometry.total_banks, int(hot[choice[i], 1])
        else:
            bank, row = int(banks[i]), int(rows[i])
        address = geometry.bank_address(bank, row, int(columns[i]))
        kind = RequestKind.WRITE if writes[i] else RequestKind.READ
        requests.append(MemoryRequest(times[i], kind, address, i))
    duration = times[-1] + 1
    logger.debug("Mixed workload generated", requests=count, duration_ns=duration)
    return RequestTrace(tuple(requests), duration, description="mixed")


def gen_hot_bursts(
    bursts: int,
    burst_length: int,
    period_ns: int,
    geometry: Geometry,
    *,
    row: int = 1_000,
    bank: int = 0,
    spacing_ns: int = 1,
) -> RequestTrace:
    """Bursts of back-to-back reads to one row; row-buffer friendly traffic."""
    if burst_length * spacing_ns >= period_ns:
        raise ConfigurationError("workload.period_ns", "bursts overlap")
    base = geometry.bank_address(bank, row)
    requests: list[MemoryRequest] = []
    for b in range(bursts):
        start = b * period_ns
        for k in range(burst_length):
            address = base.with_row(row, k % geometry.columns)
            requests.append(MemoryRequest(start + k * spacing_ns, RequestKind.READ, address, len(requests)))
    return RequestTrace(tuple(requests), bursts * period_ns, description="hot_bursts")


def adversarial_trace(
    seed: int,
    geometry: Geometry,
    timing: TimingParams,
    *,
    windows: int = 20,
    family: str | None = None,
) -> RequestTrace:
    """One randomly parameterized attack trace drawn from the known families."""
    rng = rng_for(seed, "workload/adversarial")
    family = family or str(rng.choice(ADVERSARIAL_FAMILIES))
    if family not in ADVERSARIAL_FAMILIES:
        raise ConfigurationError("workload.family", f"unknown family '{family}'")
    reach = DEFAULT_NUM_DUMMY * 8 + 200
    victim = int(rng.integers(8, geometry.rows - reach))

    if family == "double_sided":
        spec = PatternSpec(
            kind=PatternKind.TRR_BYPASS,
            victim_row=victim,
            num_dummy=0,
            dummy_acts=0,
            num_aggr_acts=int(rng.integers(20, 72)),
            iterations=windows,
        )
        trace = gen_trr_bypass(spec, geometry, timing)
    elif family == "trr_bypass":
        spec = PatternSpec(
            kind=PatternKind.TRR_BYPASS,
            victim_row=victim,
            num_reads=int(rng.choice([1, 2, 4, 8, 16, 32])),
            num_aggr_acts=int(rng.integers(1, 4)),
            variant=BypassVariant.INTERLEAVED_FLUSH if rng.random() < 0.5 else BypassVariant.BATCHED_FLUSH,
            iterations=windows,
        )
        trace = gen_trr_bypass(spec, geometry, timing)
    elif family == "many_sided":
        spec = PatternSpec(
            kind=PatternKind.MANY_SIDED,
            victim_row=victim,
            num_aggressors=int(rng.integers(2, 9)),
            num_reads=int(rng.choice([1, 4, 16])),
            num_aggr_acts=int(rng.integers(1, 6)),
            iterations=windows,
        )
        trace = gen_many_sided(spec, geometry, timing)
    else:
        fraction = float(rng.choice([0.0, 0.25, 0.5, 0.75, 1.0]))
        delta = int(rng.integers(100, 2_000))
        spec = PatternSpec(kind=PatternKind.ONOFF, victim_row=victim, delta_t_a2a=delta, on_fraction=fraction)
        on, off = spec.onoff_times(timing)
        if off < timing.tRAS + 2 * timing.tRP:
            spec = PatternSpec(kind=PatternKind.ONOFF, victim_row=victim, delta_t_a2a=delta, on_fraction=0.5)
            on, off = spec.onoff_times(timing)
        if off < timing.tRAS + 2 * timing.tRP:
            spec = PatternSpec(kind=PatternKind.ONOFF, victim_row=victim, delta_t_a2a=2_000, on_fraction=0.5)
            on, off = spec.onoff_times(timing)
        activations = max(1, windows * timing.tREFI // (on + off + 2 * timing.tRC))
        trace = gen_onoff_trace(spec.with_activations(activations), geometry, timing)
    logger.debug("Adversarial trace drawn", seed=seed, family=family, victim=victim, requests=len(trace))
    return RequestTrace(trace.requests, trace.duration, trace.warnings, family)


# 🔨💾🔚
