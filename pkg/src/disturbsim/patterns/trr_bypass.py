#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""TRR-bypassing request traces: long-open aggressors hidden behind dummy rows.

Every iteration occupies one refresh interval and starts ``sync_offset_ns``
after a tREFI boundary. Within it: one pass over the dummy rows (so they fill
the TRR sampler first), ``num_aggr_acts`` rounds of ``num_reads`` reads to
each aggressor, then the remaining dummy passes.
"""

from __future__ import annotations

import math

from provide.foundation import logger

from disturbsim.dram.geometry import Geometry
from disturbsim.dram.timing import TimingParams
from disturbsim.errors import ConfigurationError, ContractViolationError
from disturbsim.patterns.spec import PatternSpec
from disturbsim.patterns.traces import RequestTrace, TraceBuilder, group_period
from disturbsim.types import BypassVariant, PatternKind

# Dummy rows sit this far apart so no row is adjacent to two of them
DUMMY_ROW_SPACING = 8


def read_spacing(spec: PatternSpec, timing: TimingParams) -> int:
    """Arrival spacing of same-row reads; the interleaved variant holds rows twice as long per read."""
    return 2 * timing.tCOL if spec.variant is BypassVariant.INTERLEAVED_FLUSH else timing.tCOL


def dummy_rows(spec: PatternSpec, geometry: Geometry) -> list[int]:
    """Physical dummy rows, at least ``dummy_min_distance`` rows from the victim."""
    rows: list[int] = []
    for i in range(spec.num_dummy):
        offset = spec.dummy_min_distance + DUMMY_ROW_SPACING * i
        row = spec.victim_row + offset
        if row >= geometry.rows:
            row = spec.victim_row - offset
        if row < 0:
            raise ConfigurationError("pattern.num_dummy", f"{spec.num_dummy} dummy rows do not fit around the victim")
        rows.append(row)
    return rows


def window_groups(spec: PatternSpec, aggressors: list[int], dummies: list[int], window: int) -> list[tuple[int, int]]:
    """(physical row, reads) groups of one iteration; dummy order rotates per window."""
    if dummies:
        shift = window % len(dummies)
        order = dummies[shift:] + dummies[:shift]
    else:
        order = []
    groups: list[tuple[int, int]] = [(row, 1) for row in order]
    for _ in range(spec.num_aggr_acts):
        groups.extend((row, spec.num_reads) for row in aggressors)
    for _ in range(max(0, spec.dummy_acts - 1)):
        groups.extend((row, 1) for row in order)
    return groups


def windowed_trace(
    spec: PatternSpec,
    geometry: Geometry,
    timing: TimingParams,
    aggressors: list[int],
    dummies: list[int],
    label: str,
) -> RequestTrace:
    """Lay out one group list per refresh interval, spreading over-long iterations."""
    spacing = read_spacing(spec, timing)
    length = sum(group_period(reads, spacing, timing) for _, reads in window_groups(spec, aggressors, dummies, 0))
    warnings: list[str] = []
    stride = 1
    if spec.sync_offset_ns + length > timing.tREFI:
        stride = math.ceil((spec.sync_offset_ns + length) / timing.tREFI)
        warnings.append(
            f"{label} iteration takes {length} ns, longer than tREFI ({timing.tREFI} ns); "
            f"iterations start every {stride} refresh intervals"
        )
        logger.warning("Pattern exceeds refresh interval", pattern=label, length_ns=length, stride=stride)

    builder = TraceBuilder(geometry, timing, spec.bank)
    for iteration in range(spec.iterations):
        start = iteration * stride * timing.tREFI + spec.sync_offset_ns
        for row, reads in window_groups(spec, aggressors, dummies, iteration):
            start = builder.group(row, reads, start, spacing)
    duration = spec.iterations * stride * timing.tREFI
    if duration > timing.tREFW:
        raise ContractViolationError(label, f"{spec.iterations} iterations overrun one refresh window")
    return builder.build(duration, warnings, label)


def gen_trr_bypass(spec: PatternSpec, geometry: Geometry, timing: TimingParams) -> RequestTrace:
    """Request trace of the TRR-bypassing double-sided RowPress pattern.

    With ``num_reads == 1`` and no dummies this is the conventional
    double-sided RowHammer trace.
    """
    if spec.kind is not PatternKind.TRR_BYPASS:
        raise ContractViolationError("gen_trr_bypass", f"expected a trr_bypass pattern, got '{spec.kind.value}'")
    spec.check(timing, geometry)
    victim = spec.victim_row
    if victim < 1 or victim + 1 >= geometry.rows:
        raise ConfigurationError("pattern.victim_row", "needs a row on both sides")
    aggressors = [victim - 1, victim + 1]
    return windowed_trace(spec, geometry, timing, aggressors, dummy_rows(spec, geometry), "trr_bypass")


# 🔨💾🔚
