#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Two-mechanism disturbance model and its closed-form AC_min / tAggON_min oracles."""

from __future__ import annotations

import math

from attrs import define, evolve, field

from disturbsim.config.defaults import (
    DEFAULT_DISTANCE_COUPLING,
    DEFAULT_HAMMER_ANCHORS,
    DEFAULT_HAMMER_TAIL_SLOPE,
    DEFAULT_MANUFACTURER,
    DEFAULT_PRESS_ANCHORS,
    DEFAULT_PRESS_TAIL_SLOPE,
    DEFAULT_THETA_H,
    DEFAULT_TRAS,
    DOSE_EPSILON,
    HOT_TEMPERATURE_C,
    MANUFACTURER_PRESS_REDUCTION_80C,
    MAX_COUPLING_DISTANCE,
    PRESS_THRESHOLD_DIVISOR,
    REFERENCE_TEMPERATURE_C,
    PUBLISHED_PRESS_ANCHORS,
)
from disturbsim.disturbance.curves import DoseCurve, dose_of
from disturbsim.errors import ConfigurationError, ContractViolationError
from disturbsim.types import PatternKind


def _coupling(value: object) -> tuple[float, ...]:
    return tuple(float(v) for v in value)  # type: ignore[attr-defined]


@define(frozen=True, slots=True)
class MechanismModel:
    """Hammer and press dose curves with failure thresholds and distance coupling.

    ``distance_coupling[d - 1]`` scales the dose a victim at distance ``d``
    receives; distances beyond three rows receive nothing.
    """

    hammer: DoseCurve
    press: DoseCurve
    theta_h: float = field(converter=float)
    theta_p: float = field(converter=float)
    distance_coupling: tuple[float, ...] = field(default=DEFAULT_DISTANCE_COUPLING, converter=_coupling)
    name: str = "default"

    def __attrs_post_init__(self) -> None:
        if self.theta_h <= 0 or self.theta_p <= 0:
            raise ConfigurationError("model.theta_h", "thresholds must be strictly positive")
        coupling = self.distance_coupling
        if len(coupling) != MAX_COUPLING_DISTANCE:
            raise ConfigurationError("model.distance_coupling", f"needs exactly {MAX_COUPLING_DISTANCE} values")
        if coupling[0] != 1.0:
            raise ConfigurationError("model.distance_coupling", "distance 1 factor must be 1.0")
        if any(not 0.0 <= c <= 1.0 for c in coupling):
            raise ConfigurationError("model.distance_coupling", "factors must lie in [0, 1]")
        if any(b > a for a, b in zip(coupling, coupling[1:], strict=False)):
            raise ConfigurationError("model.distance_coupling", "factors must be nonincreasing in distance")

    def with_theta_h(self, theta_h: float) -> MechanismModel:
        """Same curves with both thresholds rescaled to a new Θ_H."""
        return evolve(self, theta_h=theta_h, theta_p=theta_h * self.theta_p / self.theta_h)


def press_temperature_scale(manufacturer: str = DEFAULT_MANUFACTURER) -> tuple[tuple[float, float], ...]:
    """Press dose factor: 1.0 at 50 °C, ``1 / reduction`` at 80 °C."""
    try:
        reduction = MANUFACTURER_PRESS_REDUCTION_80C[manufacturer]
    except KeyError:
        raise ConfigurationError(
            "model.manufacturer", f"unknown manufacturer '{manufacturer}'"
        ) from None
    return ((REFERENCE_TEMPERATURE_C, 1.0), (HOT_TEMPERATURE_C, 1.0 / reduction))


def default_model(
    manufacturer: str = DEFAULT_MANUFACTURER,
    theta_h: float = DEFAULT_THETA_H,
    distance_coupling: tuple[float, ...] = DEFAULT_DISTANCE_COUPLING,
) -> MechanismModel:
    """The calibrated desk model: AC_min(36 ns)=Θ_H, 21x lower at 7.8 µs, 190x at 70.2 µs."""
    return MechanismModel(
        hammer=DoseCurve(DEFAULT_HAMMER_ANCHORS, DEFAULT_HAMMER_TAIL_SLOPE, name="hammer"),
        press=DoseCurve(
            DEFAULT_PRESS_ANCHORS,
            DEFAULT_PRESS_TAIL_SLOPE,
            press_temperature_scale(manufacturer),
            name="press",
        ),
        theta_h=theta_h,
        theta_p=theta_h / PRESS_THRESHOLD_DIVISOR,
        distance_coupling=distance_coupling,
        name="default",
    )


def published_model(
    theta_h: float = DEFAULT_THETA_H,
    distance_coupling: tuple[float, ...] = DEFAULT_DISTANCE_COUPLING,
) -> MechanismModel:
    """Source characterization behind the published (t_mro, T'_RH) pairs; temperature-flat."""
    return MechanismModel(
        hammer=DoseCurve(DEFAULT_HAMMER_ANCHORS, DEFAULT_HAMMER_TAIL_SLOPE, name="hammer"),
        press=DoseCurve(PUBLISHED_PRESS_ANCHORS, DEFAULT_PRESS_TAIL_SLOPE, name="press"),
        theta_h=theta_h,
        theta_p=theta_h / PRESS_THRESHOLD_DIVISOR,
        distance_coupling=distance_coupling,
        name="published",
    )


MODEL_FACTORIES = {"default": default_model, "published": published_model}


def acmin_exact(
    model: MechanismModel, on_time: float, temperature: float, *, min_on_time: float = DEFAULT_TRAS
) -> float:
    """Unrounded activation requirement min(Θ_H / h(t), Θ_P / p(t))."""
    h = dose_of(model.hammer, on_time, temperature, min_on_time=min_on_time)
    p = dose_of(model.press, on_time, temperature, min_on_time=min_on_time)
    return min(model.theta_h / h, model.theta_p / p)


def acmin_closed_form(
    model: MechanismModel,
    on_time: float,
    temperature: float,
    pattern: PatternKind = PatternKind.SINGLE_SIDED,
    *,
    min_on_time: float = DEFAULT_TRAS,
) -> int:
    """Total aggressor activations needed for a first bitflip.

    Double-sided activations alternate between the two aggressors, each
    delivering full distance-1 dose to the shared victim, so the total equals
    the single-sided count and each aggressor needs half of it.
    """
    if pattern not in (PatternKind.SINGLE_SIDED, PatternKind.DOUBLE_SIDED):
        raise ContractViolationError("acmin_closed_form", f"pattern must be single or double, got {pattern}")
    return max(1, math.ceil(acmin_exact(model, on_time, temperature, min_on_time=min_on_time) * (1 - DOSE_EPSILON)))


def per_aggressor_acts(total: int, pattern: PatternKind) -> int:
    return math.ceil(total / 2) if pattern is PatternKind.DOUBLE_SIDED else total


def tagg_on_min_closed_form(
    model: MechanismModel,
    activations: int,
    temperature: float,
    *,
    min_on_time: float = DEFAULT_TRAS,
) -> float:
    """Smallest on-time at which ``activations`` activations reach a threshold.

    Returns ``math.inf`` when no on-time suffices.
    """
    if activations < 1:
        raise ContractViolationError("tagg_on_min_closed_form", "activation count must be >= 1")
    t_hammer = model.hammer.inverse(model.theta_h / activations, temperature)
    t_press = model.press.inverse(model.theta_p / activations, temperature)
    return max(float(min_on_time), min(t_hammer, t_press))


# 🔨💾🔚
