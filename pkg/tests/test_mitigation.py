#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Tests for TRR, Graphene, PARA and the row-open-time adaptation."""

from collections import Counter
import math

import numpy as np
import pytest

from disturbsim.controller import RowPolicy, run_trace
from disturbsim.dram import TimingParams
from disturbsim.errors import ConfigurationError, ContractViolationError
from disturbsim.mitigation import (
    GrapheneMitigation,
    GrapheneTracker,
    ParaTracker,
    TrrMitigation,
    TrrSampler,
    build_mitigation,
    derive_rp_config,
    graphene_observe,
    graphene_threshold,
    neighbor_targets,
    para_observe,
    para_probability,
    published_adaptation,
    trr_observe,
    trr_on_ref,
)
from disturbsim.seeding import rng_for


def _random_act_trace(rng: np.random.Generator, length: int) -> list[int]:
    """Uniform or skewed activations over a random number of rows."""
    rows = int(rng.integers(2, 5_000))
    if rng.random() < 0.5:
        return rng.integers(0, rows, size=length).tolist()
    return (rng.zipf(1.3, size=length) % rows).tolist()


def _adversarial_act_trace(rng: np.random.Generator, length: int, threshold: int) -> list[int]:
    """Traces that pump the spillover counter or churn the table around a few aggressors."""
    aggressors = rng.choice(np.arange(1_000_000, 1_000_100), size=int(rng.integers(1, 5)), replace=False)
    family = int(rng.integers(0, 3))
    if family == 0:
        # decoys first, aggressors last
        half = length // 2
        decoys = np.arange(half) % int(rng.integers(threshold, 4 * threshold))
        hammer = rng.choice(aggressors, size=length - half)
        trace = np.concatenate([decoys, hammer])
    elif family == 1:
        # one aggressor ACT every ``stride`` slots, unique decoys in between
        stride = int(rng.integers(2, 8))
        trace = np.arange(length) + 2_000_000
        trace[::stride] = rng.choice(aggressors, size=len(trace[::stride]))
    else:
        # many rows held just below T, then the aggressors
        held = max(1, (length // 2) // (threshold - 1))
        decoys = np.repeat(np.arange(held), threshold - 1)[: length // 2]
        hammer = rng.choice(aggressors, size=length - len(decoys))
        trace = np.concatenate([decoys, hammer])
    return trace.tolist()


def _assert_no_false_negative(trace: list[int], threshold: int) -> None:
    """Replay against an exact counter; every row reaching T must trigger by its Tth ACT."""
    tracker = GrapheneTracker(threshold=threshold, capacity=math.ceil(len(trace) / threshold), reset_period=10**12)
    true: Counter[int] = Counter()
    first_trigger: dict[int, int] = {}
    tth_act: dict[int, int] = {}
    for index, row in enumerate(trace):
        true[row] += 1
        if true[row] == threshold:
            tth_act[row] = index
        if tracker.observe(row, 0):
            first_trigger.setdefault(row, index)
    for row, index in tth_act.items():
        assert row in first_trigger, f"row {row} reached {threshold} ACTs without a trigger"
        assert first_trigger[row] <= index
    for row, count in true.items():
        estimate = tracker.estimate(row)
        assert count <= estimate
        if row in tracker.counts:
            assert estimate <= count + tracker.spillover
    assert tracker.spillover < threshold


class TestNeighborTargets:
    def test_nearest_first(self) -> None:
        assert neighbor_targets(10, 2, 100) == [9, 11, 8, 12]

    def test_clipped(self) -> None:
        assert neighbor_targets(0, 2, 100) == [1, 2]
        assert neighbor_targets(99, 1, 100) == [98]


class TestTrr:
    """Sampler capacity and REF-time refresh."""

    def test_tracks_first_rows_only(self) -> None:
        """Only the first ``capacity`` distinct rows are tracked."""
        sampler = TrrSampler(capacity=2)
        for row in (10, 10, 20, 30):
            trr_observe(sampler, row)
        assert sampler.is_tracked(10) and sampler.is_tracked(20)
        assert not sampler.is_tracked(30)
        assert sampler.untracked_acts == 1

    def test_ref_refreshes_neighbors_and_clears(self) -> None:
        """A REF restores the neighbors of tracked rows and empties the sampler."""
        sampler = TrrSampler(capacity=4)
        trr_observe(sampler, 50)
        assert trr_on_ref(sampler, 100) == [49, 51]
        assert trr_on_ref(sampler, 100) == []
        assert sampler.windows == 2

    def test_mitigation_targets_per_bank(self) -> None:
        """Targets come back tagged with their bank."""
        trr = TrrMitigation(rows=100, capacity=1)
        assert trr.on_activate(3, 40, 0) == []
        assert trr.on_refresh(range(0, 16), 7_800) == [(3, 39), (3, 41)]
        assert trr.stats()["targets"] == 2


class TestGraphene:
    """Misra-Gries counting and threshold crossings."""

    def test_trigger_every_threshold(self) -> None:
        """With room for every row, a row triggers once per T activations."""
        tracker = GrapheneTracker(threshold=10, capacity=8, reset_period=10**9)
        crossings = [tracker.observe(5, 0) for _ in range(30)]
        assert crossings.count(True) == 3
        assert [i for i, c in enumerate(crossings) if c] == [9, 19, 29]

    def test_estimates_bound_true_counts(self) -> None:
        """Estimates never undercount and overcount by at most the spillover."""
        tracker = GrapheneTracker(threshold=1_000, capacity=8, reset_period=10**9)
        rng = rng_for(0, "graphene-oracle")
        true: Counter[int] = Counter()
        for row in rng.integers(0, 40, size=5_000):
            tracker.observe(int(row), 0)
            true[int(row)] += 1
        for row, count in true.items():
            estimate = tracker.estimate(row)
            assert count <= estimate
            if row in tracker.counts:
                assert estimate <= count + tracker.spillover

    def test_no_false_negative_small(self) -> None:
        """A handful of random and adversarial traces against the exact counter."""
        for seed in range(5):
            rng = rng_for(seed, "graphene-oracle-small")
            _assert_no_false_negative(_random_act_trace(rng, 5_000), int(rng.integers(20, 200)))
            _assert_no_false_negative(_adversarial_act_trace(rng, 5_000, 50), 50)

    @pytest.mark.slow
    def test_no_false_negative_against_exact_counter(self) -> None:
        """1000 random and 100 adversarial traces: every row reaching T is caught by its Tth ACT."""
        for seed in range(1_000):
            rng = rng_for(seed, "graphene-oracle-random")
            threshold = int(rng.integers(10, 2_000))
            _assert_no_false_negative(_random_act_trace(rng, int(rng.integers(1_000, 10_001))), threshold)
        for seed in range(100):
            rng = rng_for(seed, "graphene-oracle-adversarial")
            threshold = int(rng.integers(50, 1_000))
            length = int(rng.integers(20_000, 100_001))
            _assert_no_false_negative(_adversarial_act_trace(rng, length, threshold), threshold)

    def test_window_reset(self) -> None:
        """Counters clear when a new reset window starts."""
        tracker = GrapheneTracker(threshold=10, capacity=4, reset_period=1_000)
        for _ in range(9):
            tracker.observe(7, 0)
        assert tracker.estimate(7) == 9
        tracker.observe(7, 1_000)
        assert tracker.estimate(7) == 1

    def test_observe_returns_blast_radius(self) -> None:
        tracker = GrapheneTracker(threshold=1, capacity=4, reset_period=10**9)
        assert graphene_observe(tracker, 100, 0, 2, 1_000) == [99, 101, 98, 102]

    def test_invalid_threshold(self) -> None:
        with pytest.raises(ConfigurationError):
            GrapheneTracker(threshold=0, capacity=4, reset_period=1)

    def test_table_size(self, timing: TimingParams) -> None:
        """The table holds enough entries for a whole window of activations."""
        mitigation = GrapheneMitigation(241, timing, rows=65_536)
        assert mitigation.capacity * 241 >= timing.tREFW // timing.tRC

    def test_protects_hammered_victim(self, make_request, model) -> None:
        """Graphene refreshes the victim before double-sided hammering flips it."""
        trace = [make_request(60 * i, 999 if i % 2 == 0 else 1001) for i in range(2_000)]
        timing = TimingParams()
        graphene = build_mitigation("graphene", rows=65_536, timing=timing, seed=0, graphene_threshold=333)
        report = run_trace(trace, RowPolicy.closed_page(), graphene, model, trace[-1].arrival_time)
        assert report.preventive_refreshes > 0
        assert not report.bitflips
        assert report.mitigation_stats["graphene_T"] == 333


class TestPara:
    """Probabilistic neighbor refresh."""

    def test_zero_probability(self) -> None:
        tracker = ParaTracker(0.0, rng_for(0, "para"))
        assert all(para_observe(tracker, 10, 100) == [] for _ in range(100))

    def test_certain_refresh(self) -> None:
        """p = 1 refreshes one immediate neighbor every time."""
        tracker = ParaTracker(1.0, rng_for(0, "para"))
        for _ in range(100):
            (target,) = para_observe(tracker, 10, 100)
            assert target in (9, 11)

    def test_edge_row_uses_inner_neighbor(self) -> None:
        tracker = ParaTracker(1.0, rng_for(0, "para"))
        assert all(para_observe(tracker, 0, 100) == [1] for _ in range(50))

    def test_reproducible(self) -> None:
        """Equal seeds give equal decisions."""
        a, b = ParaTracker(0.3, rng_for(9, "para")), ParaTracker(0.3, rng_for(9, "para"))
        assert [para_observe(a, 5, 100) for _ in range(500)] == [para_observe(b, 5, 100) for _ in range(500)]

    def test_invalid_probability(self) -> None:
        with pytest.raises(ConfigurationError):
            ParaTracker(1.5, rng_for(0, "para"))

    @pytest.mark.slow
    def test_refresh_rate_and_balance(self) -> None:
        """Refreshes occur at rate p, split evenly between the two sides."""
        tracker = ParaTracker(0.1, rng_for(1, "para"))
        sides: Counter[int] = Counter()
        for _ in range(100_000):
            for target in para_observe(tracker, 50, 100):
                sides[target] += 1
        total = sum(sides.values())
        assert total / 100_000 == pytest.approx(0.1, abs=0.005)
        assert sides[49] / total == pytest.approx(0.5, abs=0.02)

    @pytest.mark.slow
    def test_published_rate_within_three_sigma(self) -> None:
        """At p = 0.034 the refresh count over 10^6 ACTs stays within 3 sigma of n*p."""
        p, n = 0.034, 1_000_000
        tracker = ParaTracker(p, rng_for(2, "para"))
        refreshes = sum(len(para_observe(tracker, 50, 100)) for _ in range(n))
        assert tracker.hits == refreshes
        assert abs(refreshes - n * p) <= 3 * math.sqrt(n * p * (1 - p))

    @pytest.mark.slow
    def test_survival_of_short_runs(self) -> None:
        """Runs of 200 ACTs escape any refresh with probability (1 - p)^200."""
        p, acts, trials = 0.034, 200, 10_000
        tracker = ParaTracker(p, rng_for(3, "para"))
        survived = sum(
            all(not para_observe(tracker, 50, 100) for _ in range(acts))
            for _ in range(trials)
        )
        expected = (1 - p) ** acts
        sigma = math.sqrt(expected * (1 - expected) / trials)
        assert abs(survived / trials - expected) <= 3 * sigma


class TestRowOpenAdaptation:
    """Deriving T'_RH and the adapted defense parameters."""

    @pytest.mark.parametrize(
        ("t_mro", "expected"),
        [(36, 1000), (66, 809), (96, 724), (186, 619), (336, 555), (636, 419)],
    )
    def test_reproduces_published_thresholds(self, published, t_mro: int, expected: int) -> None:
        """The source characterization gives the published T'_RH for every cap."""
        assert derive_rp_config(published, t_mro, 1000).t_rh_prime == expected

    def test_derived_defense_parameters(self, published) -> None:
        adaptation = derive_rp_config(published, 96, 1000)
        assert adaptation.graphene_threshold == 241
        assert adaptation.para_probability == pytest.approx(0.047, abs=5e-4)

    def test_para_probability_monotone(self) -> None:
        """Lower thresholds need more frequent refreshes."""
        values = [para_probability(t) for t in (1000, 724, 419)]
        assert values == sorted(values)
        assert para_probability(1000) == pytest.approx(0.034, abs=5e-4)

    def test_graphene_threshold(self) -> None:
        assert graphene_threshold(1000) == 333
        assert graphene_threshold(2) == 1

    def test_cap_below_tras(self, published) -> None:
        with pytest.raises(ContractViolationError):
            derive_rp_config(published, 20, 1000)

    def test_published_table(self) -> None:
        assert published_adaptation(96) == (724, 241, 0.047)
        with pytest.raises(ContractViolationError):
            published_adaptation(100)


class TestBuildMitigation:
    """The kind-based factory."""

    def test_names_follow_kind(self, timing: TimingParams) -> None:
        mitigation = build_mitigation("graphene_rp", rows=1024, timing=timing, seed=0, graphene_threshold=241)
        assert mitigation.name == "graphene_rp"

    def test_graphene_needs_threshold(self, timing: TimingParams) -> None:
        with pytest.raises(ConfigurationError) as exc_info:
            build_mitigation("graphene", rows=1024, timing=timing, seed=0)
        assert exc_info.value.config_key == "mitigation.graphene_T"

    def test_para_needs_probability(self, timing: TimingParams) -> None:
        with pytest.raises(ConfigurationError) as exc_info:
            build_mitigation("para_rp", rows=1024, timing=timing, seed=0)
        assert exc_info.value.config_key == "mitigation.para_p"

    def test_unknown_kind(self, timing: TimingParams) -> None:
        with pytest.raises(ValueError):
            build_mitigation("blockhammer", rows=1024, timing=timing, seed=0)

    @pytest.mark.slow
    def test_para_rp_costs_more_than_graphene_rp(self, make_request, model, timing: TimingParams) -> None:
        """At the same T'_RH, PARA-RP issues many more preventive refreshes than Graphene-RP."""
        rows = np.arange(50_000) % 64
        trace = [make_request(10 * i, int(row) * 8) for i, row in enumerate(rows)]
        policy = RowPolicy.capped_open(636)
        t_rh_prime = 419
        graphene = build_mitigation(
            "graphene_rp", rows=65_536, timing=timing, seed=0, graphene_threshold=graphene_threshold(t_rh_prime)
        )
        para = build_mitigation("para_rp", rows=65_536, timing=timing, seed=0, para_p=para_probability(t_rh_prime))
        duration = trace[-1].arrival_time
        with_graphene = run_trace(trace, policy, graphene, model, duration)
        with_para = run_trace(trace, policy, para, model, duration)
        assert with_para.preventive_refreshes >= 5 * max(1, with_graphene.preventive_refreshes)


# 🔨💾🔚
