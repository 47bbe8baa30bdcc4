#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Per-victim accumulated disturbance dose since each row's last refresh."""

from __future__ import annotations

from attrs import define, field

from disturbsim.config.defaults import DEFAULT_TRAS
from disturbsim.disturbance.curves import dose_of
from disturbsim.disturbance.model import MechanismModel
from disturbsim.types import Mechanism

RowKey = tuple[int, int]


@define(slots=True)
class DisturbanceLedger:
    """Dose per (bank, physical row) and mechanism.

    Rows never touched hold zero dose and a last refresh at time 0. Doses only
    grow between refreshes and reset to exactly zero on refresh.
    """

    rows: int
    doses: dict[RowKey, list[float]] = field(factory=dict)
    last_refresh: dict[RowKey, int] = field(factory=dict)

    def dose(self, bank: int, row: int, mechanism: Mechanism) -> float:
        entry = self.doses.get((bank, row))
        if entry is None:
            return 0.0
        return entry[0] if mechanism is Mechanism.HAMMER else entry[1]

    def last_refresh_time(self, bank: int, row: int) -> int:
        return self.last_refresh.get((bank, row), 0)

    def touched_rows(self) -> list[RowKey]:
        return sorted(self.doses)

    def add(self, bank: int, row: int, hammer: float, press: float) -> None:
        entry = self.doses.get((bank, row))
        if entry is None:
            self.doses[(bank, row)] = [hammer, press]
        else:
            entry[0] += hammer
            entry[1] += press

    def record_activation(
        self,
        model: MechanismModel,
        bank: int,
        aggressor_row: int,
        on_time: float,
        temperature: float,
        *,
        min_on_time: float = DEFAULT_TRAS,
        count: int = 1,
    ) -> None:
        """Deposit the dose of ``count`` equal activations on every coupled victim of ``aggressor_row``."""
        hammer = count * dose_of(model.hammer, on_time, temperature, min_on_time=min_on_time)
        press = count * dose_of(model.press, on_time, temperature, min_on_time=min_on_time)
        for distance, coupling in enumerate(model.distance_coupling, start=1):
            if coupling <= 0.0:
                continue
            for victim in (aggressor_row - distance, aggressor_row + distance):
                if 0 <= victim < self.rows:
                    self.add(bank, victim, coupling * hammer, coupling * press)

    def refresh_row(self, bank: int, row: int, time: int) -> None:
        """Reset both mechanism doses of one row."""
        self.doses.pop((bank, row), None)
        self.last_refresh[(bank, row)] = time

    def copy(self) -> DisturbanceLedger:
        return DisturbanceLedger(
            self.rows,
            {key: list(value) for key, value in self.doses.items()},
            dict(self.last_refresh),
        )


def record_activation(
    ledger: DisturbanceLedger,
    model: MechanismModel,
    bank: int,
    aggressor_row: int,
    on_time: float,
    temperature: float,
    *,
    min_on_time: float = DEFAULT_TRAS,
) -> DisturbanceLedger:
    ledger.record_activation(model, bank, aggressor_row, on_time, temperature, min_on_time=min_on_time)
    return ledger


def refresh_row(ledger: DisturbanceLedger, bank: int, row: int, time: int) -> DisturbanceLedger:
    ledger.refresh_row(bank, row, time)
    return ledger


# 🔨💾🔚
