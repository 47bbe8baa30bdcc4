#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""The run file: every input that shapes simulation results."""

from __future__ import annotations

from typing import Any

from attrs import Factory, define, field

from disturbsim.characterize.analysis import ROW_PRESETS
from disturbsim.characterize.search import SearchConfig
from disturbsim.config.defaults import (
    DEFAULT_ACCURACY,
    DEFAULT_BLAST_RADIUS,
    DEFAULT_BUDGET_NS,
    DEFAULT_DISTANCE_COUPLING,
    DEFAULT_HORIZON_NS,
    DEFAULT_MANUFACTURER,
    DEFAULT_PARA_FAILURE_PROBABILITY,
    DEFAULT_QUEUE_CAPACITY,
    DEFAULT_REPEATS,
    DEFAULT_RETENTION_HOLD_NS,
    DEFAULT_SEED,
    DEFAULT_T_RH,
    DEFAULT_TEMPERATURE_C,
    DEFAULT_THETA_H,
    DEFAULT_TRR_CAPACITY,
    HOT_TEMPERATURE_C,
    MANUFACTURER_PRESS_REDUCTION_80C,
    ROWS_PER_REGION,
)
from disturbsim.controller.policy import RowPolicy
from disturbsim.controller.requests import AddressMapping
from disturbsim.controller.simulation import SimulationSetup
from disturbsim.disturbance.cells import CellConfig
from disturbsim.disturbance.model import MODEL_FACTORIES, MechanismModel, default_model, published_model
from disturbsim.dram.geometry import Geometry
from disturbsim.dram.timing import TimingParams
from disturbsim.errors import ConfigurationError
from disturbsim.mitigation.base import Mitigation
from disturbsim.mitigation.factory import RP_KINDS, build_mitigation
from disturbsim.mitigation.rp import derive_rp_config, graphene_threshold, para_probability
from disturbsim.patterns.spec import PatternSpec
from disturbsim.types import MitigationKind, PatternKind, RowPolicyKind


def _floats(value: Any) -> tuple[float, ...]:
    return tuple(float(v) for v in value)


def _ints(value: Any) -> tuple[int, ...]:
    return tuple(int(v) for v in value)


@define(frozen=True, slots=True)
class ModelSettings:
    source: str = "default"
    manufacturer: str = DEFAULT_MANUFACTURER
    theta_h: float = field(default=DEFAULT_THETA_H, converter=float)
    distance_coupling: tuple[float, ...] = field(default=DEFAULT_DISTANCE_COUPLING, converter=_floats)
    temperature: float = field(default=DEFAULT_TEMPERATURE_C, converter=float)

    def __attrs_post_init__(self) -> None:
        if self.source not in MODEL_FACTORIES:
            raise ConfigurationError("model.source", f"must be one of {sorted(MODEL_FACTORIES)}")
        if self.manufacturer not in MANUFACTURER_PRESS_REDUCTION_80C:
            raise ConfigurationError(
                "model.manufacturer", f"must be one of {sorted(MANUFACTURER_PRESS_REDUCTION_80C)}"
            )

    def build(self) -> MechanismModel:
        if self.source == "published":
            return published_model(self.theta_h, self.distance_coupling)
        return default_model(self.manufacturer, self.theta_h, self.distance_coupling)


@define(frozen=True, slots=True)
class ControllerSettings:
    row_policy: RowPolicyKind = field(default=RowPolicyKind.OPEN_PAGE, converter=RowPolicyKind)
    t_mro_ns: int | None = None
    queue_capacity: int = DEFAULT_QUEUE_CAPACITY
    horizon_ns: int = DEFAULT_HORIZON_NS
    refresh_enabled: bool = True
    record_commands: bool = False

    def __attrs_post_init__(self) -> None:
        if self.queue_capacity < 1:
            raise ConfigurationError("controller.queue_capacity", "must be >= 1")
        if self.horizon_ns < 1:
            raise ConfigurationError("controller.horizon_ns", "must be >= 1")

    def policy(self) -> RowPolicy:
        return RowPolicy(self.row_policy, self.t_mro_ns)


@define(frozen=True, slots=True)
class ResolvedMitigation:
    """Mitigation parameters after RP derivation."""

    kind: MitigationKind
    t_rh: int
    t_rh_prime: int
    graphene_threshold: int | None
    para_p: float | None
    reduction: float = 0.0


@define(frozen=True, slots=True)
class MitigationSettings:
    kind: MitigationKind = field(default=MitigationKind.NONE, converter=MitigationKind)
    t_rh: int = DEFAULT_T_RH
    graphene_T: int | None = None
    para_p: float | None = None
    trr_capacity: int = DEFAULT_TRR_CAPACITY
    blast_radius: int = DEFAULT_BLAST_RADIUS
    para_failure_probability: float = field(default=DEFAULT_PARA_FAILURE_PROBABILITY, converter=float)
    worst_case_temperature: float = field(default=HOT_TEMPERATURE_C, converter=float)

    def __attrs_post_init__(self) -> None:
        if self.t_rh < 1:
            raise ConfigurationError("mitigation.t_rh", "must be >= 1")
        if self.graphene_T is not None and self.graphene_T < 1:
            raise ConfigurationError("mitigation.graphene_T", "must be >= 1")
        if self.para_p is not None and not 0.0 <= self.para_p <= 1.0:
            raise ConfigurationError("mitigation.para_p", "must lie in [0, 1]")
        if self.trr_capacity < 1:
            raise ConfigurationError("mitigation.trr_capacity", "must be >= 1")
        if self.blast_radius < 1:
            raise ConfigurationError("mitigation.blast_radius", "must be >= 1")
        if not 0.0 < self.para_failure_probability < 1.0:
            raise ConfigurationError("mitigation.para_failure_probability", "must lie in (0, 1)")

    def resolve(
        self, model: MechanismModel, controller: ControllerSettings, timing: TimingParams
    ) -> ResolvedMitigation:
        """Fill in thresholds; -RP kinds derive T'_RH from the model at the controller's cap.

        Explicit ``graphene_T`` / ``para_p`` always win over derived values.
        """
        t_rh_prime = self.t_rh
        reduction = 0.0
        if self.kind in RP_KINDS:
            if controller.row_policy is not RowPolicyKind.CAPPED_OPEN or controller.t_mro_ns is None:
                raise ConfigurationError(
                    "controller.row_policy", f"'{self.kind.value}' requires the capped row policy with t_mro_ns"
                )
            adaptation = derive_rp_config(
                model, controller.t_mro_ns, self.t_rh, self.worst_case_temperature, t_ras=timing.tRAS
            )
            t_rh_prime = adaptation.t_rh_prime
            reduction = adaptation.reduction
        graphene_t = self.graphene_T
        para_p = self.para_p
        if self.kind in (MitigationKind.GRAPHENE, MitigationKind.GRAPHENE_RP) and graphene_t is None:
            graphene_t = graphene_threshold(t_rh_prime)
        if self.kind in (MitigationKind.PARA, MitigationKind.PARA_RP) and para_p is None:
            para_p = para_probability(t_rh_prime, self.para_failure_probability)
        return ResolvedMitigation(self.kind, self.t_rh, t_rh_prime, graphene_t, para_p, reduction)


@define(frozen=True, slots=True)
class AttackSettings:
    """Grid of the TRR-bypass attack: every (num_aggr_acts, num_reads) pair is run."""

    num_reads: tuple[int, ...] = field(default=(1, 16, 32, 64), converter=_ints)
    num_aggr_acts: tuple[int, ...] = field(default=(1, 2, 3), converter=_ints)

    def __attrs_post_init__(self) -> None:
        if not self.num_reads or min(self.num_reads) < 1:
            raise ConfigurationError("attack.num_reads", "needs values >= 1")
        if not self.num_aggr_acts or min(self.num_aggr_acts) < 1:
            raise ConfigurationError("attack.num_aggr_acts", "needs values >= 1")


EXPERIMENTS = ("acmin", "taggon_min", "ber", "overlap", "ecc", "retention")


def _patterns(value: Any) -> tuple[PatternKind, ...]:
    return tuple(PatternKind(v) for v in value)


@define(frozen=True, slots=True)
class SearchSettings:
    accuracy: float = field(default=DEFAULT_ACCURACY, converter=float)
    budget_ns: int = DEFAULT_BUDGET_NS
    repeats: int = DEFAULT_REPEATS
    temperatures: tuple[float, ...] = field(default=(DEFAULT_TEMPERATURE_C,), converter=_floats)
    t_agg_on_ns: tuple[int, ...] = field(default=(36, 186, 636, 7_800, 70_200), converter=_ints)
    activations: tuple[int, ...] = field(default=(1, 10, 100, 1_000), converter=_ints)
    patterns: tuple[PatternKind, ...] = field(
        default=(PatternKind.SINGLE_SIDED, PatternKind.DOUBLE_SIDED), converter=_patterns
    )
    row_preset: str = "explicit"
    rows: tuple[int, ...] = field(default=(30_000,), converter=_ints)
    rows_per_region: int = ROWS_PER_REGION
    onoff_delta_ns: tuple[int, ...] = field(default=(6_000,), converter=_ints)
    onoff_fractions: tuple[float, ...] = field(default=(0.0, 0.25, 0.5, 0.75, 1.0), converter=_floats)
    retention_hold_ns: int = DEFAULT_RETENTION_HOLD_NS
    experiments: tuple[str, ...] = field(default=EXPERIMENTS, converter=tuple)

    def __attrs_post_init__(self) -> None:
        if self.row_preset not in ROW_PRESETS:
            raise ConfigurationError("search.row_preset", f"must be one of {list(ROW_PRESETS)}")
        unknown = set(self.experiments) - set(EXPERIMENTS)
        if unknown:
            raise ConfigurationError("search.experiments", f"unknown experiments {sorted(unknown)}")
        if any(t < 1 for t in self.t_agg_on_ns):
            raise ConfigurationError("search.t_agg_on_ns", "on-times must be positive")
        if any(a < 1 for a in self.activations):
            raise ConfigurationError("search.activations", "activation counts must be >= 1")
        self.search_config()

    def search_config(self, temperature: float | None = None) -> SearchConfig:
        return SearchConfig(
            self.accuracy,
            self.budget_ns,
            self.repeats,
            self.temperatures[0] if temperature is None else temperature,
        )


@define(frozen=True, slots=True)
class OutputSettings:
    dir: str | None = None
    include_wall_clock: bool = False
    plotdata: bool = True


@define(frozen=True, slots=True)
class RunConfig:
    """Validated run file contents.

    Equal configs produce byte-identical result files; wall-clock time is the
    only exception and is off unless ``output.include_wall_clock`` is set.
    """

    seed: int = DEFAULT_SEED
    preset: str | None = None
    geometry: Geometry = Factory(Geometry)
    timing: TimingParams = Factory(TimingParams)
    address_map: AddressMapping = Factory(AddressMapping)
    model: ModelSettings = Factory(ModelSettings)
    cells: CellConfig = Factory(CellConfig)
    controller: ControllerSettings = Factory(ControllerSettings)
    mitigation: MitigationSettings = Factory(MitigationSettings)
    pattern: PatternSpec = Factory(PatternSpec)
    attack: AttackSettings = Factory(AttackSettings)
    search: SearchSettings = Factory(SearchSettings)
    output: OutputSettings = Factory(OutputSettings)

    def validate(self) -> RunConfig:
        """Cross-section invariants, checked eagerly at load time."""
        self.address_map.check_fits(self.geometry)
        policy = self.controller.policy()
        policy.check(self.timing)
        if self.controller.horizon_ns > self.timing.tREFW and self.controller.refresh_enabled:
            raise ConfigurationError("controller.horizon_ns", f"must not exceed tREFW ({self.timing.tREFW} ns)")
        self.pattern.check(self.timing, self.geometry)
        self.search.search_config().check(self.timing)
        self.mitigation.resolve(self.build_model(), self.controller, self.timing)
        return self

    def build_model(self) -> MechanismModel:
        return self.model.build()

    def resolved_mitigation(self) -> ResolvedMitigation:
        return self.mitigation.resolve(self.build_model(), self.controller, self.timing)

    def build_mitigation(self) -> Mitigation:
        resolved = self.resolved_mitigation()
        return build_mitigation(
            resolved.kind,
            rows=self.geometry.rows,
            timing=self.timing,
            seed=self.seed,
            graphene_threshold=resolved.graphene_threshold,
            para_p=resolved.para_p,
            trr_capacity=self.mitigation.trr_capacity,
            blast_radius=self.mitigation.blast_radius,
        )

    def simulation_setup(self) -> SimulationSetup:
        return SimulationSetup(
            geometry=self.geometry,
            timing=self.timing,
            cells=self.cells,
            seed=self.seed,
            temperature=self.model.temperature,
            queue_capacity=self.controller.queue_capacity,
            horizon=self.controller.horizon_ns,
            refresh_enabled=self.controller.refresh_enabled,
            record_commands=self.controller.record_commands,
        )


# 🔨💾🔚
