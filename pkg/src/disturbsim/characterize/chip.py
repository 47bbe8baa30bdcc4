#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""The simulated chip driven directly by command logs, with periodic refresh disabled."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable

from attrs import define, field

from disturbsim.config.defaults import DEFAULT_SEED, DEFAULT_TEMPERATURE_C
from disturbsim.disturbance.cells import CellConfig, CellSampler
from disturbsim.disturbance.faults import Bitflip, collect_bitflips
from disturbsim.disturbance.ledger import DisturbanceLedger
from disturbsim.disturbance.model import MechanismModel
from disturbsim.dram.commands import Command, RowClosed
from disturbsim.dram.device import DramDevice
from disturbsim.dram.geometry import Geometry
from disturbsim.dram.timing import TimingParams
from disturbsim.types import Mechanism


@define(frozen=True, slots=True)
class ChipRun:
    """Outcome of one command log."""

    flips: frozenset[Bitflip]
    end_time: int
    activations: int
    max_t_agg_on: int

    def disturbance_flips(self) -> frozenset[Bitflip]:
        """Hammer and press flips; retention flips are not caused by the pattern."""
        return frozenset(f for f in self.flips if f.mechanism is not Mechanism.RETENTION)

    def victim_flips(self, bank: int, row: int) -> frozenset[Bitflip]:
        return frozenset(f for f in self.disturbance_flips() if f.bank == bank and f.row == row)


@define(slots=True)
class SimulatedChip:
    """A fresh device and ledger per log; cell profiles are reused across logs."""

    model: MechanismModel
    geometry: Geometry = field(factory=Geometry)
    timing: TimingParams = field(factory=TimingParams)
    cells: CellConfig = field(factory=CellConfig)
    seed: int = DEFAULT_SEED
    temperature: float = DEFAULT_TEMPERATURE_C
    sampler: CellSampler = field(init=False)

    def __attrs_post_init__(self) -> None:
        self.sampler = CellSampler(self.seed, self.geometry.columns, self.cells)

    def run(self, log: Iterable[Command], *, hold_until: int | None = None) -> ChipRun:
        """Apply every command (raising on the first illegal one) and collect flips.

        Equal activations are deposited in one step. ``hold_until`` extends
        the observation past the last command, for retention experiments.
        """
        device = DramDevice(self.geometry, self.timing)
        closes: Counter[tuple[int, int, int]] = Counter()
        end = 0
        for cmd in log:
            event = device.apply_command(cmd)
            end = cmd.issue_time
            if isinstance(event, RowClosed):
                closes[(event.bank, self.geometry.physical_row(event.row), event.t_agg_on)] += 1

        ledger = DisturbanceLedger(self.geometry.rows)
        for (bank, row, on_time), count in sorted(closes.items()):
            ledger.record_activation(
                self.model, bank, row, on_time, self.temperature, min_on_time=self.timing.tRAS, count=count
            )
        if hold_until is not None:
            end = max(end, hold_until)
        flips = collect_bitflips(ledger, self.sampler, self.model, end, self.temperature)
        return ChipRun(
            flips=flips,
            end_time=end,
            activations=sum(closes.values()),
            max_t_agg_on=max((on for _, _, on in closes), default=0),
        )

    def retention_flips(self, rows: Iterable[tuple[int, int]], hold_ns: int) -> frozenset[Bitflip]:
        """Flips of idle rows left unrefreshed for ``hold_ns``."""
        ledger = DisturbanceLedger(self.geometry.rows)
        return collect_bitflips(ledger, self.sampler, self.model, hold_ns, self.temperature, rows=list(rows))


# 🔨💾🔚
