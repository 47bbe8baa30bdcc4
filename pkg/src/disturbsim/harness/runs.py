#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""The runs behind each CLI command, returning records plus a summary."""

from __future__ import annotations

from collections.abc import Callable
from pathlib import Path
import time
from typing import Any

from attrs import define, evolve, field
from provide.foundation import logger

from disturbsim.characterize.analysis import select_rows
from disturbsim.characterize.chip import SimulatedChip
from disturbsim.characterize.experiments import (
    acmin_experiment,
    ber_onoff_experiment,
    ecc_experiment,
    overlap_experiment,
    retention_experiment,
    taggon_experiment,
)
from disturbsim.config.defaults import HOT_TEMPERATURE_C
from disturbsim.config.run import RunConfig
from disturbsim.controller.requests import MemoryRequest, parse_trace
from disturbsim.controller.simulation import SimulationReport, run_trace
from disturbsim.decorators import with_metrics
from disturbsim.patterns.trr_bypass import gen_trr_bypass
from disturbsim.results.records import ResultRecord
from disturbsim.types import PatternKind


@define(frozen=True, slots=True)
class RunOutcome:
    """What one command produced: records for the result files and a summary document."""

    command: str
    records: tuple[ResultRecord, ...] = field(converter=tuple)
    summary: dict[str, Any] = field(factory=dict)
    warnings: tuple[str, ...] = field(default=(), converter=tuple)


def _bitflip_rows(report: SimulationReport) -> list[list[Any]]:
    return sorted([f.bank, f.row, f.column, f.direction.value, f.mechanism.value] for f in report.bitflips)


def _timed(config: RunConfig, produce: Callable[[], list[ResultRecord]]) -> list[ResultRecord]:
    start = time.perf_counter()
    records = produce()
    if not config.output.include_wall_clock:
        return records
    elapsed = time.perf_counter() - start
    return [evolve(r, wall_clock_s=elapsed / max(1, len(records))) for r in records]


def simulate_trace(
    config: RunConfig, requests: list[MemoryRequest], *, duration: int | None = None, label: str = "<trace>"
) -> RunOutcome:
    """Run ``requests`` through the configured controller, defense and model."""
    last = requests[-1].arrival_time if requests else 0
    duration = last if duration is None else duration
    start = time.perf_counter()
    report = run_trace(
        requests,
        config.controller.policy(),
        config.build_mitigation(),
        config.build_model(),
        duration,
        config.simulation_setup(),
    )
    summary = report.summary()
    metrics = {**summary, "bitflip_list": _bitflip_rows(report)}
    record = ResultRecord(
        "simulate",
        {"trace": label, "requests": len(requests), "policy": report.policy, "mitigation": report.mitigation},
        metrics,
        time.perf_counter() - start if config.output.include_wall_clock else None,
    )
    logger.info(
        "Trace simulated",
        trace=label,
        requests=len(requests),
        acts=report.commands.get("ACT", 0),
        bitflips=len(report.bitflips),
    )
    return RunOutcome("simulate", [record], summary, report.warnings)


def simulate_run(config: RunConfig, trace_path: Path, *, duration: int | None = None) -> RunOutcome:
    requests = parse_trace(trace_path, config.address_map, config.geometry)
    return simulate_trace(config, requests, duration=duration, label=trace_path.name)


def characterization_chip(config: RunConfig) -> SimulatedChip:
    return SimulatedChip(
        config.build_model(),
        config.geometry,
        config.timing,
        config.cells,
        config.seed,
        config.model.temperature,
    )


@with_metrics("characterize")
def characterize_run(config: RunConfig) -> RunOutcome:
    """Every experiment listed in ``search.experiments``, in that order."""
    search = config.search
    chip = characterization_chip(config)
    rows = select_rows(
        search.row_preset, config.geometry, rows_per_region=search.rows_per_region, explicit=search.rows
    )
    base = config.pattern
    cfg = search.search_config()
    hot = search.search_config(temperature=HOT_TEMPERATURE_C)
    runners: dict[str, Callable[[], list[ResultRecord]]] = {
        "acmin": lambda: acmin_experiment(
            rows, search.t_agg_on_ns, search.patterns, search.temperatures, cfg, chip, base
        ),
        "taggon_min": lambda: taggon_experiment(
            rows, search.activations, search.patterns, search.temperatures, cfg, chip, base
        ),
        "ber": lambda: ber_onoff_experiment(
            rows[0], search.onoff_delta_ns, search.onoff_fractions, search.temperatures, cfg, chip, base
        ),
        "overlap": lambda: [overlap_experiment(rows, hot, chip, hold_ns=search.retention_hold_ns)],
        "ecc": lambda: [ecc_experiment(rows, hot, chip)],
        "retention": lambda: [
            retention_experiment(rows, chip, bank=base.bank, hold_ns=search.retention_hold_ns)[0]
        ],
    }
    records: list[ResultRecord] = []
    for name in search.experiments:
        logger.debug("Experiment starting", experiment=name, rows=len(rows))
        records.extend(_timed(config, runners[name]))
    no_bitflip = sum(1 for r in records if r.metrics.get("no_bitflip"))
    summary = {
        "experiments": list(search.experiments),
        "rows": len(rows),
        "records": len(records),
        "no_bitflip_cells": no_bitflip,
    }
    return RunOutcome("characterize", records, summary)


@with_metrics("attack")
def attack_run(config: RunConfig) -> RunOutcome:
    """TRR-bypass traces over the attack grid, each against a fresh instance of the configured defense."""
    records: list[ResultRecord] = []
    warnings: list[str] = []
    policy = config.controller.policy()
    model = config.build_model()
    setup = config.simulation_setup()
    for num_aggr_acts in config.attack.num_aggr_acts:
        for num_reads in config.attack.num_reads:
            spec = evolve(
                config.pattern, kind=PatternKind.TRR_BYPASS, num_aggr_acts=num_aggr_acts, num_reads=num_reads
            )
            trace = gen_trr_bypass(spec, config.geometry, config.timing)
            start = time.perf_counter()
            report = run_trace(trace.requests, policy, config.build_mitigation(), model, trace.duration, setup)
            warnings.extend(trace.warnings)
            records.append(
                ResultRecord(
                    "attack",
                    {
                        "mitigation": report.mitigation,
                        "policy": report.policy,
                        "num_aggr_acts": num_aggr_acts,
                        "num_reads": num_reads,
                        "victim_row": spec.victim_row,
                    },
                    {
                        "bitflips": len(report.bitflips),
                        "rows_with_bitflips": report.rows_with_bitflips,
                        "acts": report.commands.get("ACT", 0),
                        "preventive_refreshes": report.preventive_refreshes,
                        "t_agg_on_max_ns": report.t_agg_on_max,
                    },
                    time.perf_counter() - start if config.output.include_wall_clock else None,
                )
            )
            logger.debug(
                "Attack point done",
                num_aggr_acts=num_aggr_acts,
                num_reads=num_reads,
                bitflips=len(report.bitflips),
            )
    summary = {
        "mitigation": config.mitigation.kind.value,
        "points": len(records),
        "bitflips": sum(r.metrics["bitflips"] for r in records),
        "points_with_bitflips": sum(1 for r in records if r.metrics["bitflips"] > 0),
    }
    return RunOutcome("attack", records, summary, warnings)


def resolve_run(config: RunConfig) -> RunOutcome:
    """Only the resolved defense parameters; the cheapest sweep command."""
    resolved = config.resolved_mitigation()
    metrics = {
        "kind": resolved.kind,
        "t_rh": resolved.t_rh,
        "t_rh_prime": resolved.t_rh_prime,
        "graphene_T": resolved.graphene_threshold,
        "para_p": resolved.para_p,
        "reduction": resolved.reduction,
    }
    record = ResultRecord("resolve", {"t_mro_ns": config.controller.t_mro_ns}, metrics)
    return RunOutcome("resolve", [record], dict(record.metrics))


# 🔨💾🔚
