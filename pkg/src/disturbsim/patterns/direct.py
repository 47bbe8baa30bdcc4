#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Direct-drive command logs for characterization (periodic refresh disabled)."""

from __future__ import annotations

from disturbsim.dram.commands import Command, act, pre
from disturbsim.dram.geometry import Geometry
from disturbsim.dram.timing import TimingParams
from disturbsim.errors import ContractViolationError, InfeasiblePatternError
from disturbsim.patterns.spec import PatternSpec
from disturbsim.types import PatternKind

DIRECT_KINDS = (PatternKind.SINGLE_SIDED, PatternKind.DOUBLE_SIDED, PatternKind.ONOFF)


def aggressor_rows(spec: PatternSpec, geometry: Geometry) -> list[int]:
    """Physical aggressor rows; double-sided lists R0 then R2 around the victim."""
    victim = spec.victim_row
    below, above = victim - 1, victim + 1
    if spec.kind is PatternKind.DOUBLE_SIDED:
        if below < 0 or above >= geometry.rows:
            raise ContractViolationError("aggressor_rows", f"victim {victim} has no row on one side")
        return [below, above]
    return [below if below >= 0 else above]


def max_activations(spec: PatternSpec, timing: TimingParams) -> int:
    """Most activations that fit the pattern's time budget."""
    on, gap = spec.on_off(timing)
    return spec.budget_ns // (on + gap)


def gen_direct(spec: PatternSpec, timing: TimingParams, geometry: Geometry | None = None) -> list[Command]:
    """ACT, hold for tAggON, PRE, wait tRP (or tAggOFF), repeated ``spec.activations`` times.

    Raises:
        ContractViolationError: for request-trace pattern kinds or on-times below tRAS
        InfeasiblePatternError: if the activations do not fit the time budget
    """
    geometry = geometry or Geometry()
    if spec.kind not in DIRECT_KINDS:
        raise ContractViolationError("gen_direct", f"pattern '{spec.kind.value}' is not a direct-drive pattern")
    on, gap = spec.on_off(timing)
    if on < timing.tRAS:
        raise ContractViolationError("gen_direct", f"tAggON {on} ns is below tRAS ({timing.tRAS} ns)")
    count = spec.activations or 1
    required = count * (on + gap)
    if required > spec.budget_ns:
        raise InfeasiblePatternError(spec.kind.value, required, spec.budget_ns)

    base = geometry.bank_address(spec.bank)
    rows = [geometry.logical_row(r) for r in aggressor_rows(spec, geometry)]
    log: list[Command] = []
    t = 0
    for i in range(count):
        address = base.with_row(rows[i % len(rows)])
        log.append(act(address, t))
        log.append(pre(address, t + on))
        t += on + gap
    return log


def gen_rowhammer(
    victim_row: int,
    activations: int,
    timing: TimingParams,
    geometry: Geometry | None = None,
    *,
    bank: int = 0,
    double_sided: bool = False,
) -> list[Command]:
    """Conventional RowHammer: every activation held for exactly tRAS, back to back at tRC."""
    geometry = geometry or Geometry()
    base = geometry.bank_address(bank)
    if double_sided:
        aggressors = [victim_row - 1, victim_row + 1]
    else:
        aggressors = [victim_row - 1 if victim_row > 0 else victim_row + 1]
    log: list[Command] = []
    for i in range(activations):
        address = base.with_row(geometry.logical_row(aggressors[i % len(aggressors)]))
        start = i * timing.tRC
        log.extend((act(address, start), pre(address, start + timing.tRAS)))
    return log


# 🔨💾🔚
