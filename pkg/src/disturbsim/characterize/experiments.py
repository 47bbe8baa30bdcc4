#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Characterization grids, one result record per measured cell."""

from __future__ import annotations

from collections.abc import Sequence

from attrs import evolve
from provide.foundation import logger

from disturbsim.characterize.analysis import direction_fractions, ecc_word_histogram, overlap
from disturbsim.characterize.ber import measure_ber
from disturbsim.characterize.chip import SimulatedChip
from disturbsim.characterize.search import SearchConfig, find_acmin, find_taggon_min
from disturbsim.config.defaults import DEFAULT_PRESS_ON_TIME_NS, DEFAULT_RETENTION_HOLD_NS, HOT_TEMPERATURE_C
from disturbsim.disturbance.faults import Bitflip
from disturbsim.patterns.direct import gen_direct
from disturbsim.patterns.spec import PatternSpec
from disturbsim.results.records import ResultRecord
from disturbsim.types import Mechanism, PatternKind


def _cells(flips: frozenset[Bitflip], mechanism: Mechanism) -> set[tuple[int, int, int]]:
    return {(f.bank, f.row, f.column) for f in flips if f.mechanism is mechanism}


def acmin_experiment(
    rows: Sequence[int],
    t_agg_on_values: Sequence[int],
    patterns: Sequence[PatternKind],
    temperatures: Sequence[float],
    search: SearchConfig,
    chip: SimulatedChip,
    base: PatternSpec | None = None,
) -> list[ResultRecord]:
    base = base or PatternSpec()
    records: list[ResultRecord] = []
    for temperature in temperatures:
        cfg = evolve(search, temperature=temperature)
        for pattern in patterns:
            spec = evolve(base, kind=pattern)
            for t_agg_on in t_agg_on_values:
                for row in rows:
                    acmin = find_acmin(row, t_agg_on, spec, cfg, chip)
                    records.append(
                        ResultRecord(
                            "acmin",
                            {"row": row, "t_agg_on": t_agg_on, "pattern": pattern, "temperature": temperature},
                            {"acmin": acmin, "no_bitflip": acmin is None},
                        )
                    )
    logger.info("AC_min grid done", cells=len(records))
    return records


def taggon_experiment(
    rows: Sequence[int],
    activation_values: Sequence[int],
    patterns: Sequence[PatternKind],
    temperatures: Sequence[float],
    search: SearchConfig,
    chip: SimulatedChip,
    base: PatternSpec | None = None,
) -> list[ResultRecord]:
    base = base or PatternSpec()
    records: list[ResultRecord] = []
    for temperature in temperatures:
        cfg = evolve(search, temperature=temperature)
        for pattern in patterns:
            spec = evolve(base, kind=pattern)
            for activations in activation_values:
                for row in rows:
                    taggon = find_taggon_min(row, activations, spec, cfg, chip)
                    records.append(
                        ResultRecord(
                            "taggon_min",
                            {"row": row, "activations": activations, "pattern": pattern, "temperature": temperature},
                            {"taggon_min": taggon, "no_bitflip": taggon is None},
                        )
                    )
    logger.info("tAggON_min grid done", cells=len(records))
    return records


def ber_onoff_experiment(
    row: int,
    delta_values: Sequence[int],
    fractions: Sequence[float],
    temperatures: Sequence[float],
    search: SearchConfig,
    chip: SimulatedChip,
    base: PatternSpec | None = None,
) -> list[ResultRecord]:
    """BER of the on/off pattern as the open share of each tA2A step grows."""
    base = base or PatternSpec()
    records: list[ResultRecord] = []
    for temperature in temperatures:
        cfg = evolve(search, temperature=temperature)
        for delta in delta_values:
            for fraction in fractions:
                spec = evolve(
                    base,
                    kind=PatternKind.ONOFF,
                    victim_row=row,
                    delta_t_a2a=delta,
                    on_fraction=fraction,
                    activations=None,
                )
                on, off = spec.onoff_times(chip.timing)
                result = measure_ber(spec, cfg, chip)
                records.append(
                    ResultRecord(
                        "ber",
                        {
                            "row": row,
                            "pattern": PatternKind.ONOFF,
                            "delta_t_a2a": delta,
                            "on_fraction": fraction,
                            "t_agg_on": on,
                            "t_agg_off": off,
                            "temperature": temperature,
                        },
                        {"ber": result.ber, "flips": len(result.flips), "activations": result.activations},
                    )
                )
    return records


def retention_experiment(
    rows: Sequence[int],
    chip: SimulatedChip,
    *,
    bank: int = 0,
    hold_ns: int = DEFAULT_RETENTION_HOLD_NS,
    temperature: float = HOT_TEMPERATURE_C,
) -> tuple[ResultRecord, frozenset[Bitflip]]:
    """Rows left idle with refresh disabled for ``hold_ns``; no simulation horizon applies."""
    hot = evolve(chip, temperature=temperature)
    flips = hot.retention_flips(((bank, r) for r in rows), hold_ns)
    record = ResultRecord(
        "retention",
        {"rows": len(rows), "hold_ns": hold_ns, "temperature": temperature},
        {"flips": len(flips), "directions": direction_fractions(flips)},
    )
    return record, flips


def overlap_experiment(
    rows: Sequence[int],
    search: SearchConfig,
    chip: SimulatedChip,
    *,
    press_on_time: int = DEFAULT_PRESS_ON_TIME_NS,
    hold_ns: int = DEFAULT_RETENTION_HOLD_NS,
) -> ResultRecord:
    """Cells flipping at AC_min under press vs hammer, and press vs retention."""
    spec = PatternSpec(kind=PatternKind.DOUBLE_SIDED, budget_ns=search.budget_ns)
    hot = evolve(chip, temperature=search.temperature)
    press: set[tuple[int, int, int]] = set()
    hammer: set[tuple[int, int, int]] = set()
    once = evolve(search, repeats=1)
    for row in rows:
        for on_time, mechanism, sink in (
            (press_on_time, Mechanism.PRESS, press),
            (chip.timing.tRAS, Mechanism.HAMMER, hammer),
        ):
            acmin = find_acmin(row, on_time, spec, once, hot)
            if acmin is None:
                continue
            at_acmin = evolve(spec, victim_row=row, t_agg_on=on_time, activations=acmin)
            run = hot.run(gen_direct(at_acmin, chip.timing, chip.geometry))
            sink.update(_cells(run.disturbance_flips(), mechanism))
    _, retention_flips = retention_experiment(rows, chip, bank=spec.bank, hold_ns=hold_ns)
    retention = _cells(retention_flips, Mechanism.RETENTION)
    metrics = {
        "press_cells": len(press),
        "hammer_cells": len(hammer),
        "retention_cells": len(retention),
        "press_hammer": overlap(press, hammer) if press else None,
        "press_retention": overlap(press, retention) if press else None,
    }
    return ResultRecord("overlap", {"rows": len(rows), "press_on_time": press_on_time}, metrics)


def ecc_experiment(
    rows: Sequence[int],
    search: SearchConfig,
    chip: SimulatedChip,
    *,
    t_agg_on: int = DEFAULT_PRESS_ON_TIME_NS,
) -> ResultRecord:
    """Word-level flip counts of victim rows after as many long activations as the budget allows."""
    spec = PatternSpec(kind=PatternKind.DOUBLE_SIDED, t_agg_on=t_agg_on)
    flips: set[Bitflip] = set()
    for row in rows:
        result = measure_ber(evolve(spec, victim_row=row), evolve(search, repeats=1), chip)
        flips.update(f for f in result.flips if f.mechanism is Mechanism.PRESS)
    histogram = ecc_word_histogram(flips)
    return ResultRecord(
        "ecc",
        {"rows": len(rows), "t_agg_on": t_agg_on, "temperature": search.temperature},
        histogram.as_row(),
    )


# 🔨💾🔚
