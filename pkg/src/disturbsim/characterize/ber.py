#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Bit error rate of a victim row under a maximal-activation pattern."""

from __future__ import annotations

from attrs import define, evolve
from provide.foundation import logger

from disturbsim.characterize.chip import SimulatedChip
from disturbsim.characterize.search import SearchConfig, repeat_seeds
from disturbsim.disturbance.faults import Bitflip
from disturbsim.patterns.direct import gen_direct, max_activations
from disturbsim.patterns.spec import PatternSpec


@define(frozen=True, slots=True)
class BerResult:
    ber: float
    flips: frozenset[Bitflip]
    activations: int
    t_agg_on: int


def measure_ber(spec: PatternSpec, cfg: SearchConfig, chip: SimulatedChip) -> BerResult:
    """Highest victim-row BER over ``cfg.repeats`` runs.

    Without an explicit activation count the pattern activates as many times
    as the time budget allows.
    """
    timing = chip.timing
    budgeted = evolve(spec, budget_ns=cfg.budget_ns)
    activations = spec.activations or max_activations(budgeted, timing)
    log = gen_direct(budgeted.with_activations(activations), timing, chip.geometry)
    on_time, _ = budgeted.on_off(timing)

    worst = BerResult(0.0, frozenset(), activations, on_time)
    for seed in repeat_seeds(chip.seed, cfg.repeats):
        trial = evolve(chip, seed=seed, temperature=cfg.temperature)
        flips = trial.run(log).victim_flips(spec.bank, spec.victim_row)
        ber = len({f.column for f in flips}) / chip.geometry.columns
        if ber > worst.ber:
            worst = BerResult(ber, flips, activations, on_time)
    logger.debug("BER measured", pattern=spec.kind.value, activations=activations, ber=worst.ber)
    return worst


# 🔨💾🔚
