#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Threshold searches: AC_min at a fixed on-time and tAggON_min at a fixed activation count.

Both run a ramp-then-bisect search over a sorted grid of candidate values
against a monotone predicate ("does this value produce a bitflip?"). The ramp
doubles the grid index until the predicate holds; bisection then narrows the
bracket until it is within ``max(1, ceil(accuracy * estimate))``. ``None``
means no candidate within the time budget produced a bitflip.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
import math

from attrs import define, evolve
from provide.foundation import logger

from disturbsim.characterize.chip import SimulatedChip
from disturbsim.config.defaults import (
    DEFAULT_ACCURACY,
    DEFAULT_BUDGET_NS,
    DEFAULT_REPEATS,
    DEFAULT_TAGGON_STEP_NS,
    DEFAULT_TEMPERATURE_C,
    MAX_TAGGON_NS,
)
from disturbsim.decorators import with_metrics
from disturbsim.dram.timing import TimingParams
from disturbsim.errors import ConfigurationError, ContractViolationError
from disturbsim.patterns.direct import gen_direct, max_activations
from disturbsim.patterns.spec import PatternSpec
from disturbsim.seeding import derive_seed


@define(frozen=True, slots=True)
class SearchConfig:
    accuracy: float = DEFAULT_ACCURACY
    budget_ns: int = DEFAULT_BUDGET_NS
    repeats: int = DEFAULT_REPEATS
    temperature: float = DEFAULT_TEMPERATURE_C

    def __attrs_post_init__(self) -> None:
        if not 0.0 < self.accuracy <= 1.0:
            raise ConfigurationError("search.accuracy", "must lie in (0, 1]")
        if self.repeats < 1:
            raise ConfigurationError("search.repeats", "must be >= 1")
        if self.budget_ns < 1:
            raise ConfigurationError("search.budget_ns", "must be >= 1")

    def check(self, timing: TimingParams) -> None:
        if self.budget_ns > timing.tREFW:
            raise ConfigurationError("search.budget_ns", f"must not exceed tREFW ({timing.tREFW} ns)")


def tolerance(accuracy: float, estimate: int) -> int:
    return max(1, math.ceil(accuracy * estimate))


def bisect_grid(predicate: Callable[[int], bool], grid: Sequence[int], accuracy: float) -> int | None:
    """Smallest grid value satisfying ``predicate``, to within the accuracy tolerance.

    ``predicate`` must be monotone over ``grid`` (False then True). Each
    value is evaluated at most once.
    """
    if not grid:
        return None
    seen: dict[int, bool] = {}

    def holds(index: int) -> bool:
        if index not in seen:
            seen[index] = predicate(grid[index])
        return seen[index]

    last = len(grid) - 1
    below = -1
    index = 0
    while not holds(index):
        if index == last:
            return None
        below = index
        index = min(last, 2 * index + 1)
    above = index
    while above - below > 1 and grid[above] - grid[below] > tolerance(accuracy, grid[above]):
        middle = (below + above) // 2
        if holds(middle):
            above = middle
        else:
            below = middle
    return grid[above]


def repeat_seeds(seed: int, repeats: int) -> list[int]:
    return [seed] + [derive_seed(seed, f"repeat/{r}") for r in range(1, repeats)]


def _best(values: list[int | None]) -> int | None:
    found = [v for v in values if v is not None]
    return min(found) if found else None


@with_metrics("find_acmin")
def find_acmin(row: int, t_agg_on: int, spec: PatternSpec, cfg: SearchConfig, chip: SimulatedChip) -> int | None:
    """Fewest total aggressor activations at ``t_agg_on`` that flip a bit near ``row``.

    Raises:
        ContractViolationError: if ``t_agg_on`` is below tRAS
    """
    timing = chip.timing
    if t_agg_on < timing.tRAS:
        raise ContractViolationError("find_acmin", f"tAggON {t_agg_on} ns is below tRAS ({timing.tRAS} ns)")
    base = evolve(spec, victim_row=row, t_agg_on=t_agg_on, budget_ns=cfg.budget_ns)
    grid = range(1, max_activations(base, timing) + 1)
    results: list[int | None] = []
    for seed in repeat_seeds(chip.seed, cfg.repeats):
        trial = evolve(chip, seed=seed, temperature=cfg.temperature)

        def flips_at(activations: int, trial: SimulatedChip = trial) -> bool:
            log = gen_direct(base.with_activations(activations), timing, trial.geometry)
            return bool(trial.run(log).disturbance_flips())

        results.append(bisect_grid(flips_at, grid, cfg.accuracy))
    best = _best(results)
    logger.debug("AC_min search done", row=row, t_agg_on=t_agg_on, pattern=base.kind.value, acmin=best)
    return best


def taggon_grid(activations: int, spec: PatternSpec, cfg: SearchConfig, timing: TimingParams) -> range:
    """On-time candidates: tRAS upward in 30 ns steps, bounded by 30 ms and the time budget."""
    _, gap = spec.on_off(timing)
    ceiling = min(MAX_TAGGON_NS, cfg.budget_ns // activations - gap)
    if ceiling < timing.tRAS:
        return range(0)
    return range(timing.tRAS, ceiling + 1, DEFAULT_TAGGON_STEP_NS)


@with_metrics("find_taggon_min")
def find_taggon_min(
    row: int, activations: int, spec: PatternSpec, cfg: SearchConfig, chip: SimulatedChip
) -> int | None:
    """Shortest on-time at which ``activations`` activations flip a bit near ``row``."""
    if activations < 1:
        raise ContractViolationError("find_taggon_min", "activation count must be >= 1")
    timing = chip.timing
    base = evolve(spec, victim_row=row, activations=activations, budget_ns=cfg.budget_ns)
    grid = taggon_grid(activations, base, cfg, timing)
    results: list[int | None] = []
    for seed in repeat_seeds(chip.seed, cfg.repeats):
        trial = evolve(chip, seed=seed, temperature=cfg.temperature)

        def flips_at(on_time: int, trial: SimulatedChip = trial) -> bool:
            log = gen_direct(base.with_t_agg_on(on_time), timing, trial.geometry)
            return bool(trial.run(log).disturbance_flips())

        results.append(bisect_grid(flips_at, grid, cfg.accuracy))
    best = _best(results)
    logger.debug("tAggON_min search done", row=row, activations=activations, taggon_min=best)
    return best


# 🔨💾🔚
