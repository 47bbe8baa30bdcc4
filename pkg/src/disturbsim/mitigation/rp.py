#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Adapting RowHammer defenses to a row-open-time cap (the -RP configurations).

Capping row-open time at ``t_mro`` bounds the per-activation press dose, so
the activation threshold a defense must honor drops from ``T_RH`` to
``T'_RH = round((1 - Y) * T_RH)`` where ``Y`` is the worst-case reduction in
AC_min between tRAS and ``t_mro``.
"""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal
import math

from attrs import define

from disturbsim.config.defaults import (
    DEFAULT_PARA_FAILURE_PROBABILITY,
    DEFAULT_TRAS,
    GRAPHENE_T_DIVISOR,
    HOT_TEMPERATURE_C,
    PUBLISHED_RP_CONFIGS,
)
from disturbsim.disturbance.model import MechanismModel, acmin_exact
from disturbsim.errors import ContractViolationError


def round_half_up(value: float) -> int:
    return int(Decimal(repr(value)).quantize(Decimal(1), rounding=ROUND_HALF_UP))


@define(frozen=True, slots=True)
class RpAdaptation:
    """A (t_mro, T'_RH) pair and the reduction factor it came from."""

    t_mro: int
    reduction: float
    t_rh: int
    t_rh_prime: int
    source: str

    @property
    def graphene_threshold(self) -> int:
        return graphene_threshold(self.t_rh_prime)

    @property
    def para_probability(self) -> float:
        return para_probability(self.t_rh_prime)


def derive_rp_config(
    model: MechanismModel,
    t_mro: int,
    t_rh: int,
    worst_case_temperature: float = HOT_TEMPERATURE_C,
    *,
    t_ras: int = DEFAULT_TRAS,
) -> RpAdaptation:
    """Derive T'_RH for a row-open-time cap from the model's worst case.

    ``Y = 1 - AC_min(t_mro) / AC_min(tRAS)`` uses the unrounded activation
    requirement at the worst-case temperature; single- and double-sided
    patterns share one requirement in this model.

    Raises:
        ContractViolationError: if ``t_mro`` is below tRAS
    """
    if t_mro < t_ras:
        raise ContractViolationError("derive_rp_config", f"t_mro {t_mro} ns is below tRAS ({t_ras} ns)")
    base = acmin_exact(model, t_ras, worst_case_temperature, min_on_time=t_ras)
    capped = acmin_exact(model, t_mro, worst_case_temperature, min_on_time=t_ras)
    reduction = max(0.0, 1.0 - capped / base)
    return RpAdaptation(
        t_mro=t_mro,
        reduction=reduction,
        t_rh=t_rh,
        t_rh_prime=max(1, round_half_up((1.0 - reduction) * t_rh)),
        source=model.name,
    )


def graphene_threshold(t_rh_prime: int) -> int:
    """Graphene T for a target threshold: T'_RH // 3, the relation the published configurations follow."""
    return max(1, t_rh_prime // GRAPHENE_T_DIVISOR)


def para_probability(t_rh_prime: int, failure_probability: float = DEFAULT_PARA_FAILURE_PROBABILITY) -> float:
    """Smallest p whose chance of T'_RH activations without a refresh stays below the target."""
    if t_rh_prime < 1:
        raise ContractViolationError("para_probability", "T'_RH must be >= 1")
    return 1.0 - math.exp(math.log(failure_probability) / t_rh_prime)


def published_adaptation(t_mro: int) -> tuple[int, int, float]:
    """Published (T'_RH, Graphene T, PARA p) for one t_mro."""
    try:
        t_rh_prime, p = PUBLISHED_RP_CONFIGS[t_mro]
    except KeyError:
        raise ContractViolationError(
            "published_adaptation", f"no published configuration for t_mro={t_mro}"
        ) from None
    return t_rh_prime, graphene_threshold(t_rh_prime), p


# 🔨💾🔚
