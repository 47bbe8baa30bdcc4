#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Bitflip injection: which vulnerable cells have failed given the current ledger."""

from __future__ import annotations

from collections.abc import Iterable

from attrs import define

from disturbsim.config.defaults import DOSE_EPSILON
from disturbsim.disturbance.cells import CellProfile, CellSampler
from disturbsim.disturbance.ledger import DisturbanceLedger, RowKey
from disturbsim.disturbance.model import MechanismModel
from disturbsim.types import FlipDirection, Mechanism


@define(frozen=True, slots=True, order=True)
class Bitflip:
    """One failed cell, attributed to the mechanism that flipped it."""

    bank: int
    row: int
    column: int
    direction: FlipDirection
    mechanism: Mechanism


def row_bitflips(
    profile: CellProfile,
    bank: int,
    row: int,
    hammer_dose: float,
    press_dose: float,
    model: MechanismModel,
    elapsed_ns: float,
    temperature: float,
) -> list[Bitflip]:
    """Flips of one row for given doses and time since its last refresh."""
    flips: list[Bitflip] = []
    scale = 1.0 - DOSE_EPSILON
    if hammer_dose > 0.0:
        direction = profile.direction(Mechanism.HAMMER)
        limit = hammer_dose / (model.theta_h * scale)
        flips.extend(
            Bitflip(bank, row, cell.column, direction, Mechanism.HAMMER)
            for cell in profile.hammer_cells
            if cell.multiplier <= limit
        )
    if press_dose > 0.0:
        direction = profile.direction(Mechanism.PRESS)
        limit = press_dose / (model.theta_p * scale)
        flips.extend(
            Bitflip(bank, row, cell.column, direction, Mechanism.PRESS)
            for cell in profile.press_cells
            if cell.multiplier <= limit
        )
    if elapsed_ns > 0:
        direction = profile.direction(Mechanism.RETENTION)
        flips.extend(
            Bitflip(bank, row, cell.column, direction, Mechanism.RETENTION)
            for cell in profile.retention_cells
            if elapsed_ns > cell.budget_at(temperature)
        )
    return flips


def collect_bitflips(
    ledger: DisturbanceLedger,
    sampler: CellSampler,
    model: MechanismModel,
    time: int,
    temperature: float,
    rows: Iterable[RowKey] | None = None,
) -> frozenset[Bitflip]:
    """All flipped cells among ``rows`` (default: rows holding dose).

    A cell flips iff its mechanism's row dose reaches threshold x multiplier,
    or, for retention cells, iff time since the row's last refresh exceeds its
    budget at ``temperature``.
    """
    keys = ledger.touched_rows() if rows is None else rows
    flips: list[Bitflip] = []
    for bank, row in keys:
        flips.extend(
            row_bitflips(
                sampler.profile(bank, row),
                bank,
                row,
                ledger.dose(bank, row, Mechanism.HAMMER),
                ledger.dose(bank, row, Mechanism.PRESS),
                model,
                time - ledger.last_refresh_time(bank, row),
                temperature,
            )
        )
    return frozenset(flips)


def flipped_cells(flips: Iterable[Bitflip]) -> set[tuple[int, int, int]]:
    """Distinct (bank, row, column) cells, regardless of mechanism."""
    return {(f.bank, f.row, f.column) for f in flips}


def rows_with_bitflips(flips: Iterable[Bitflip]) -> set[tuple[int, int]]:
    return {(f.bank, f.row) for f in flips}


# 🔨💾🔚
