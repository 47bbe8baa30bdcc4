#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Trace-driven simulation: controller, device and disturbance model run together."""

from __future__ import annotations

from collections.abc import Iterable
import math
from typing import Any

from attrs import Factory, define, field
import numpy as np
from provide.foundation import logger

from disturbsim.config.defaults import (
    DEFAULT_HORIZON_NS,
    DEFAULT_QUEUE_CAPACITY,
    DEFAULT_SEED,
    DEFAULT_TEMPERATURE_C,
)
from disturbsim.controller.policy import RowPolicy
from disturbsim.controller.requests import MemoryRequest
from disturbsim.controller.scheduler import Scheduler
from disturbsim.decorators import with_timing
from disturbsim.disturbance.cells import CellConfig, CellSampler
from disturbsim.disturbance.faults import Bitflip, collect_bitflips, row_bitflips, rows_with_bitflips
from disturbsim.disturbance.ledger import DisturbanceLedger
from disturbsim.disturbance.model import MechanismModel
from disturbsim.dram.commands import Command
from disturbsim.dram.geometry import Geometry
from disturbsim.dram.timing import TimingParams
from disturbsim.errors import ContractViolationError
from disturbsim.mitigation.base import Mitigation, NoMitigation
from disturbsim.types import Mechanism


@define(frozen=True, slots=True)
class SimulationSetup:
    """Everything besides trace, policy, mitigation and model that shapes a run."""

    geometry: Geometry = Factory(Geometry)
    timing: TimingParams = Factory(TimingParams)
    cells: CellConfig = Factory(CellConfig)
    seed: int = DEFAULT_SEED
    temperature: float = DEFAULT_TEMPERATURE_C
    queue_capacity: int = DEFAULT_QUEUE_CAPACITY
    horizon: int = DEFAULT_HORIZON_NS
    refresh_enabled: bool = True
    record_commands: bool = False


class DisturbanceTracker:
    """Applies row closes and restores to the ledger, harvesting flips before each reset."""

    def __init__(
        self,
        model: MechanismModel,
        sampler: CellSampler,
        rows: int,
        temperature: float,
        min_on_time: int,
    ) -> None:
        self.model = model
        self.sampler = sampler
        self.temperature = temperature
        self.min_on_time = min_on_time
        self.ledger = DisturbanceLedger(rows)
        self.flips: set[Bitflip] = set()

    def row_closed(self, bank: int, row: int, on_time: int, time: int) -> None:
        self.ledger.record_activation(
            self.model, bank, row, on_time, self.temperature, min_on_time=self.min_on_time
        )

    def rows_restored(self, bank: int, rows: Iterable[int], time: int) -> None:
        ledger = self.ledger
        for row in rows:
            if (bank, row) in ledger.doses:
                self.flips.update(
                    row_bitflips(
                        self.sampler.profile(bank, row),
                        bank,
                        row,
                        ledger.dose(bank, row, Mechanism.HAMMER),
                        ledger.dose(bank, row, Mechanism.PRESS),
                        self.model,
                        time - ledger.last_refresh_time(bank, row),
                        self.temperature,
                    )
                )
            ledger.refresh_row(bank, row, time)

    def final_flips(self, time: int) -> frozenset[Bitflip]:
        self.flips.update(collect_bitflips(self.ledger, self.sampler, self.model, time, self.temperature))
        return frozenset(self.flips)


@define(frozen=True, slots=True)
class SimulationReport:
    """Outcome of one trace run."""

    policy: str
    mitigation: str
    duration: int
    end_time: int
    requests: int
    served: int
    backpressure_events: int
    commands: dict[str, int]
    row_hits: int
    row_misses: int
    latency_mean: float
    latency_p50: float
    latency_p95: float
    latency_p99: float
    preventive_refreshes: int
    refs_issued: int
    refs_postponed: int
    max_refresh_debt: int
    acts: dict[tuple[int, int, int], int]
    t_agg_on_counts: dict[int, int]
    bitflips: frozenset[Bitflip]
    mitigation_stats: dict[str, Any] = field(factory=dict)
    warnings: tuple[str, ...] = ()
    command_log: tuple[Command, ...] = ()

    @property
    def hit_rate(self) -> float:
        total = self.row_hits + self.row_misses
        return self.row_hits / total if total else 0.0

    @property
    def max_acts_per_window(self) -> int:
        """Largest ACT count any single row received within one refresh window."""
        return max(self.acts.values(), default=0)

    @property
    def rows_with_bitflips(self) -> int:
        return len(rows_with_bitflips(self.bitflips))

    @property
    def t_agg_on_min(self) -> int | None:
        return min(self.t_agg_on_counts) if self.t_agg_on_counts else None

    @property
    def t_agg_on_max(self) -> int | None:
        return max(self.t_agg_on_counts) if self.t_agg_on_counts else None

    def t_agg_on_histogram(self, bins: int = 16) -> tuple[list[int], list[float]]:
        """Log-spaced histogram of measured on-times (counts, bin edges)."""
        if not self.t_agg_on_counts:
            return [], []
        values = np.array(sorted(self.t_agg_on_counts), dtype=float)
        weights = np.array([self.t_agg_on_counts[int(v)] for v in values], dtype=float)
        low, high = values[0], max(values[-1], values[0] + 1)
        edges = np.geomspace(low, high, bins + 1)
        counts, edges = np.histogram(values, bins=edges, weights=weights)
        return [int(c) for c in counts], [float(e) for e in edges]

    def summary(self) -> dict[str, Any]:
        """Scalar metrics as a JSON-ready mapping."""
        return {
            "policy": self.policy,
            "mitigation": self.mitigation,
            "duration_ns": self.duration,
            "end_time_ns": self.end_time,
            "requests": self.requests,
            "served": self.served,
            "backpressure_events": self.backpressure_events,
            "commands": dict(sorted(self.commands.items())),
            "row_hits": self.row_hits,
            "row_misses": self.row_misses,
            "hit_rate": self.hit_rate,
            "latency_mean_ns": self.latency_mean,
            "latency_p50_ns": self.latency_p50,
            "latency_p95_ns": self.latency_p95,
            "latency_p99_ns": self.latency_p99,
            "preventive_refreshes": self.preventive_refreshes,
            "refs_issued": self.refs_issued,
            "refs_postponed": self.refs_postponed,
            "max_refresh_debt": self.max_refresh_debt,
            "max_acts_per_window": self.max_acts_per_window,
            "t_agg_on_min_ns": self.t_agg_on_min,
            "t_agg_on_max_ns": self.t_agg_on_max,
            "bitflips": len(self.bitflips),
            "rows_with_bitflips": self.rows_with_bitflips,
            "mitigation_stats": self.mitigation_stats,
            "warnings": list(self.warnings),
        }


def _percentiles(latencies: list[int]) -> tuple[float, float, float, float]:
    if not latencies:
        return 0.0, 0.0, 0.0, 0.0
    values = np.asarray(latencies, dtype=float)
    p50, p95, p99 = np.percentile(values, [50, 95, 99])
    return float(values.mean()), float(p50), float(p95), float(p99)


def _check_trace(trace: list[MemoryRequest], duration: int, horizon: int) -> None:
    if duration < 0:
        raise ContractViolationError("run_trace", "duration must be >= 0")
    if duration > horizon:
        raise ContractViolationError("run_trace", f"duration {duration} ns exceeds the horizon ({horizon} ns)")
    last = 0
    for request in trace:
        if request.arrival_time < last:
            raise ContractViolationError("run_trace", "arrival times must be nondecreasing")
        last = request.arrival_time
    if last > duration:
        raise ContractViolationError("run_trace", f"arrival at {last} ns falls after the duration ({duration} ns)")


@with_timing
def run_trace(
    trace: Iterable[MemoryRequest],
    policy: RowPolicy,
    mitigation: Mitigation | None,
    model: MechanismModel,
    duration: int,
    setup: SimulationSetup | None = None,
) -> SimulationReport:
    """Run a request trace to completion and report memory-side and disturbance metrics.

    The run covers ``[0, duration]`` and continues past it only to drain
    queued requests. Periodic refresh keeps running throughout.

    Raises:
        ContractViolationError: if ``duration`` exceeds the horizon or a request arrives after it
        IllegalCommandError: if the scheduler ever produces an illegal command
    """
    setup = setup or SimulationSetup()
    mitigation = mitigation or NoMitigation()
    requests = list(trace)
    _check_trace(requests, duration, setup.horizon)
    geometry, timing = setup.geometry, setup.timing

    tracker = DisturbanceTracker(
        model,
        CellSampler(setup.seed, geometry.columns, setup.cells),
        geometry.rows,
        setup.temperature,
        timing.tRAS,
    )
    scheduler = Scheduler(
        geometry,
        timing,
        policy,
        mitigation,
        tracker,
        queue_capacity=setup.queue_capacity,
        refresh_enabled=setup.refresh_enabled,
        record_commands=setup.record_commands,
    )
    logger.debug(
        "Trace simulation starting",
        requests=len(requests),
        policy=policy.describe(),
        mitigation=mitigation.name,
        duration_ns=duration,
    )

    index = 0
    now = 0
    while True:
        while index < len(requests) and requests[index].arrival_time <= now:
            scheduler.enqueue(requests[index])
            index += 1
        _, next_time = scheduler.tick(now)
        if index < len(requests):
            next_time = min(next_time, requests[index].arrival_time)
        if next_time > duration and index >= len(requests) and scheduler.drained():
            break
        if math.isinf(next_time):
            raise ContractViolationError("run_trace", f"scheduler stalled at {now} ns with queued requests")
        now = int(next_time)

    end_time = max(now, duration)
    scheduler.close_open_rows(end_time)
    flips = tracker.final_flips(end_time)
    stats = scheduler.stats
    mean, p50, p95, p99 = _percentiles(stats.latencies)
    refresh = scheduler.refresh
    report = SimulationReport(
        policy=policy.describe(),
        mitigation=mitigation.name,
        duration=duration,
        end_time=end_time,
        requests=len(requests),
        served=stats.served,
        backpressure_events=stats.backpressure,
        commands=dict(stats.commands),
        row_hits=stats.row_hits,
        row_misses=stats.row_misses,
        latency_mean=mean,
        latency_p50=p50,
        latency_p95=p95,
        latency_p99=p99,
        preventive_refreshes=stats.preventive_refreshes,
        refs_issued=sum(r.issued for r in refresh),
        refs_postponed=sum(r.postponed for r in refresh),
        max_refresh_debt=max((r.max_debt for r in refresh), default=0),
        acts=dict(stats.acts),
        t_agg_on_counts=dict(stats.t_agg_on),
        bitflips=flips,
        mitigation_stats=mitigation.stats(),
        warnings=tuple(scheduler.warnings),
        command_log=tuple(scheduler.command_log),
    )
    logger.info(
        "Trace simulated",
        requests=report.requests,
        served=report.served,
        acts=report.commands.get("ACT", 0),
        hit_rate=round(report.hit_rate, 4),
        preventive_refreshes=report.preventive_refreshes,
        bitflips=len(flips),
    )
    return report


# 🔨💾🔚
