#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Tests for threshold searches, BER measurement and the analysis helpers."""

from collections.abc import Callable

import numpy as np
import pytest

from disturbsim.characterize import (
    SearchConfig,
    SimulatedChip,
    acmin_experiment,
    bisect_grid,
    direction_fractions,
    ecc_experiment,
    ecc_word_histogram,
    find_acmin,
    find_taggon_min,
    loglog_slope,
    measure_ber,
    overlap,
    overlap_experiment,
    repeat_seeds,
    retention_experiment,
    select_rows,
    taggon_grid,
    tolerance,
)
from disturbsim.disturbance import Bitflip, CellSampler, acmin_exact
from disturbsim.dram import Geometry, TimingParams
from disturbsim.errors import ConfigurationError, ContractViolationError
from disturbsim.patterns import PatternSpec
from disturbsim.seeding import rng_for
from disturbsim.types import FlipDirection, Mechanism, PatternKind

ONCE = SearchConfig(repeats=1)
# keeps activation counts well above 1 across the whole on-time range
SCALED_THETA_H = 150_000


@pytest.fixture
def chip(model) -> SimulatedChip:
    return SimulatedChip(model)


def _oracle(threshold: int, calls: list[int]) -> Callable[[int], bool]:
    def predicate(value: int) -> bool:
        calls.append(value)
        return value >= threshold

    return predicate


def _flip(column: int, row: int = 5, mechanism: Mechanism = Mechanism.PRESS) -> Bitflip:
    return Bitflip(0, row, column, FlipDirection.ONE_TO_ZERO, mechanism)


class TestBisectGrid:
    """Exponential then binary search over a monotone predicate."""

    def test_synthetic_threshold(self) -> None:
        """A known threshold is found exactly when the tolerance allows."""
        calls: list[int] = []

        def predicate(value: int) -> bool:
            calls.append(value)
            return value >= 73

        assert bisect_grid(predicate, range(1, 1_000), 0.01) in (73, 74)
        assert len(calls) == len(set(calls))

    def test_never_true(self) -> None:
        assert bisect_grid(lambda v: False, range(1, 100), 0.01) is None
        assert bisect_grid(lambda v: True, range(0), 0.01) is None

    @pytest.mark.parametrize("threshold", [1, 2, 50, 999, 5_000])
    def test_result_within_tolerance(self, threshold: int) -> None:
        """The answer never undershoots and overshoots by at most the tolerance."""
        found = bisect_grid(lambda v: v >= threshold, range(1, 10_000), 0.05)
        assert found is not None
        assert threshold <= found <= threshold + max(1, int(0.05 * found) + 1)

    def test_random_monotone_oracles(self) -> None:
        """1000 seeded thresholds in [1, 10^6] all meet the accuracy contract."""
        rng = rng_for(0, "bisect-oracles")
        grid = range(1, 1_000_001)
        for threshold in rng.integers(1, 1_000_001, size=1_000).tolist():
            calls: list[int] = []
            found = bisect_grid(_oracle(threshold, calls), grid, 0.01)
            assert found is not None
            assert threshold <= found < threshold + tolerance(0.01, found)
            assert len(calls) == len(set(calls))

    def test_repeat_seeds(self) -> None:
        seeds = repeat_seeds(5, 3)
        assert seeds[0] == 5
        assert len(set(seeds)) == 3


class TestFindAcmin:
    """Activation thresholds measured on the simulated chip."""

    @pytest.mark.parametrize(
        ("t_agg_on", "low", "high"),
        [(36, 1_000, 1_011), (7_800, 48, 48), (70_200, 6, 6)],
    )
    def test_calibration_anchors(self, chip: SimulatedChip, t_agg_on: int, low: int, high: int) -> None:
        """Single-sided AC_min matches the model's anchors."""
        acmin = find_acmin(30_000, t_agg_on, PatternSpec(), ONCE, chip)
        assert acmin is not None
        assert low <= acmin <= high

    def test_double_sided_total(self, chip: SimulatedChip) -> None:
        """Double-sided counts both aggressors and needs the same total."""
        spec = PatternSpec(kind=PatternKind.DOUBLE_SIDED)
        assert find_acmin(30_000, 7_800, spec, ONCE, chip) == 48

    def test_hot_press(self, chip: SimulatedChip) -> None:
        """At 80 °C fewer long activations suffice."""
        hot = SearchConfig(repeats=1, temperature=80.0)
        assert find_acmin(30_000, 7_800, PatternSpec(), hot, chip) == 27

    def test_no_bitflip_within_budget(self, chip: SimulatedChip) -> None:
        """A budget too short for any flip reports None."""
        short = SearchConfig(repeats=1, budget_ns=1_000)
        assert find_acmin(30_000, 36, PatternSpec(), short, chip) is None

    def test_on_time_below_tras(self, chip: SimulatedChip) -> None:
        with pytest.raises(ContractViolationError):
            find_acmin(30_000, 20, PatternSpec(), ONCE, chip)

    def test_slope_past_refresh_interval(self, chip: SimulatedChip) -> None:
        """Past 7.8 µs AC_min falls roughly inversely with on-time."""
        on_times = [7_800, 15_600, 31_200, 70_200]
        values = [find_acmin(30_000, t, PatternSpec(), ONCE, chip) for t in on_times]
        assert all(v is not None for v in values)
        assert -1.2 <= loglog_slope(on_times, values) <= -0.8


    def test_closed_form_slope_to_thirty_ms(self, model) -> None:
        """The unrounded requirement falls with slope -1 from 7.8 µs to 30 ms."""
        on_times = np.geomspace(7_800, 30_000_000, 12)
        values = [acmin_exact(model, float(t), 50.0) for t in on_times]
        assert -1.05 <= loglog_slope(on_times, values) <= -0.95

    @pytest.mark.slow
    def test_search_slope_to_thirty_ms(self, model, timing: TimingParams) -> None:
        """Searched AC_min at 12 on-times in [7.8 µs, 30 ms] has log-log slope -1 within 5 %."""
        chip = SimulatedChip(model.with_theta_h(SCALED_THETA_H))
        cfg = SearchConfig(repeats=1, budget_ns=timing.tREFW)
        on_times = [int(t) for t in np.geomspace(7_800, 30_000_000, 12)]
        values = [find_acmin(30_000, t, PatternSpec(), cfg, chip) for t in on_times]
        assert all(v is not None for v in values)
        assert -1.05 <= loglog_slope(on_times, values) <= -0.95


class TestFindTaggonMin:
    """On-time thresholds for a fixed activation count."""

    def test_single_activation(self, chip: SimulatedChip) -> None:
        """One activation needs roughly 369.5 µs of on-time."""
        taggon = find_taggon_min(30_000, 1, PatternSpec(), ONCE, chip)
        assert taggon is not None
        assert 369_470 <= taggon <= 369_470 * 1.011

    def test_many_activations_floor(self, chip: SimulatedChip) -> None:
        """With enough activations the shortest legal on-time already flips."""
        assert find_taggon_min(30_000, 1_000, PatternSpec(), ONCE, chip) == 36

    @pytest.mark.slow
    def test_search_slope_over_activation_counts(self, model, timing: TimingParams) -> None:
        """tAggON_min over 12 counts from 2 to 7000 falls with log-log slope -1 within 5 %."""
        chip = SimulatedChip(model.with_theta_h(SCALED_THETA_H))
        cfg = SearchConfig(repeats=1, budget_ns=timing.tREFW)
        counts = sorted({round(c) for c in np.geomspace(2, 7_000, 12)})
        values = [find_taggon_min(30_000, c, PatternSpec(), cfg, chip) for c in counts]
        assert all(v is not None for v in values)
        assert -1.05 <= loglog_slope(counts, values) <= -0.95

    def test_grid_respects_budget(self, timing: TimingParams) -> None:
        grid = taggon_grid(1, PatternSpec(), SearchConfig(budget_ns=1_000), timing)
        assert grid == range(36, 986, 30)
        assert taggon_grid(100, PatternSpec(), SearchConfig(budget_ns=1_000), timing) == range(0)

    def test_invalid_count(self, chip: SimulatedChip) -> None:
        with pytest.raises(ContractViolationError):
            find_taggon_min(30_000, 0, PatternSpec(), ONCE, chip)


class TestBer:
    """Victim-row bit error rate."""

    def test_above_and_below_threshold(self, chip: SimulatedChip) -> None:
        spec = PatternSpec(kind=PatternKind.DOUBLE_SIDED, t_agg_on=7_800)
        above = measure_ber(spec.with_activations(100), ONCE, chip)
        below = measure_ber(spec.with_activations(40), ONCE, chip)
        assert above.ber > 0.0
        assert above.ber == len({f.column for f in above.flips}) / chip.geometry.columns
        assert below.ber == 0.0

    def test_budget_fills_activations(self, chip: SimulatedChip) -> None:
        """Without a count the pattern uses the whole time budget."""
        spec = PatternSpec(kind=PatternKind.DOUBLE_SIDED, t_agg_on=7_800)
        result = measure_ber(spec, SearchConfig(repeats=1, budget_ns=781_500), chip)
        assert result.activations == 100


class TestAnalysis:
    """Overlap, ECC words, directions, slopes and row selection."""

    def test_overlap(self) -> None:
        assert overlap({(0, 1, 1), (0, 1, 2)}, [(0, 1, 1)]) == 0.5
        with pytest.raises(ContractViolationError):
            overlap(set(), [(0, 1, 1)])

    @pytest.mark.slow
    def test_population_overlap_over_many_rows(self, geometry: Geometry) -> None:
        """Across 10^4 sampled rows press cells rarely coincide with hammer or retention cells."""
        sampler = CellSampler(0, geometry.columns)
        press: set[tuple[int, int, int]] = set()
        hammer: set[tuple[int, int, int]] = set()
        retention: set[tuple[int, int, int]] = set()
        for row in range(1, 10_001):
            profile = sampler.profile(0, row)
            sinks = ((press, Mechanism.PRESS), (hammer, Mechanism.HAMMER), (retention, Mechanism.RETENTION))
            for sink, mechanism in sinks:
                sink.update((0, row, column) for column in profile.columns(mechanism))
        assert 0 < overlap(press, hammer) <= 0.00013
        assert 0 < overlap(press, retention) <= 0.0034

    def test_ecc_bins(self) -> None:
        """Words are binned by how many of their 64 bits flipped."""
        flips = [_flip(c) for c in (0, 1)] + [_flip(c) for c in range(64, 68)] + [_flip(c) for c in range(128, 138)]
        histogram = ecc_word_histogram(flips)
        assert histogram.bins == {"1-2": 1, "3-8": 1, ">8": 1}
        assert histogram.max_per_word == 10
        assert histogram.words == 3

    def test_ecc_counts_cells_once(self) -> None:
        """A cell flipped by two mechanisms counts once."""
        flips = [_flip(3), _flip(3, mechanism=Mechanism.HAMMER)]
        assert ecc_word_histogram(flips).max_per_word == 1

    def test_direction_fractions(self) -> None:
        flips = [_flip(1), _flip(2), Bitflip(0, 5, 3, FlipDirection.ZERO_TO_ONE, Mechanism.HAMMER)]
        fractions = direction_fractions(flips)
        assert fractions["press"] == {"1to0": 1.0, "0to1": 0.0}
        assert fractions["hammer"]["0to1"] == 1.0

    def test_loglog_slope(self) -> None:
        assert loglog_slope([1, 10, 100], [100, 10, 1]) == pytest.approx(-1.0)
        with pytest.raises(ContractViolationError):
            loglog_slope([1], [1])

    def test_select_rows(self, geometry: Geometry) -> None:
        assert select_rows("first", geometry, rows_per_region=4) == [1, 2, 3, 4]
        assert len(select_rows("first_middle_last", geometry)) == 3 * 1_024
        assert select_rows("explicit", geometry, explicit=[30_000]) == [30_000]

    def test_select_rows_rejects_edges(self, geometry: Geometry) -> None:
        with pytest.raises(ConfigurationError):
            select_rows("explicit", geometry, explicit=[0])
        with pytest.raises(ConfigurationError):
            select_rows("middle", geometry)


class TestExperiments:
    """Experiment drivers produce one record per grid cell."""

    def test_acmin_grid(self, chip: SimulatedChip) -> None:
        records = acmin_experiment([30_000, 30_010], [7_800, 70_200], [PatternKind.SINGLE_SIDED], [50.0], ONCE, chip)
        assert len(records) == 4
        assert {r.experiment for r in records} == {"acmin"}
        assert [r.metrics["acmin"] for r in records] == [48, 48, 6, 6]

    def test_retention(self, chip: SimulatedChip) -> None:
        """Rows left unrefreshed for 4 s at 80 °C lose retention-weak cells, 1 to 0 in true cells."""
        record, flips = retention_experiment([10, 20], chip)
        assert flips
        assert record.metrics["flips"] == len(flips)
        assert record.metrics["directions"]["retention"]["1to0"] == 1.0

    def test_overlap_is_small(self, chip: SimulatedChip) -> None:
        """Press-vulnerable cells barely overlap hammer- and retention-vulnerable ones."""
        record = overlap_experiment([30_000, 30_100], ONCE, chip)
        assert record.metrics["press_cells"] > 0
        assert record.metrics["hammer_cells"] > 0
        assert 0.0 <= record.metrics["press_hammer"] <= 0.01
        assert 0.0 <= record.metrics["press_retention"] <= 0.05

    def test_ecc(self, chip: SimulatedChip) -> None:
        record = ecc_experiment([30_000], SearchConfig(repeats=1, budget_ns=2_000_000), chip)
        bins = {k: record.metrics[k] for k in ("1-2", "3-8", ">8")}
        assert record.metrics["words"] > 0
        assert sum(bins.values()) == record.metrics["words"]


# 🔨💾🔚
