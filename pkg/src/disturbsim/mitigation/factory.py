#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Mitigation construction by kind."""

from __future__ import annotations

from provide.foundation import logger

from disturbsim.config.defaults import DEFAULT_BLAST_RADIUS, DEFAULT_TRR_CAPACITY
from disturbsim.dram.timing import TimingParams
from disturbsim.errors import ConfigurationError
from disturbsim.mitigation.base import Mitigation, NoMitigation
from disturbsim.mitigation.graphene import GrapheneMitigation
from disturbsim.mitigation.para import ParaMitigation
from disturbsim.mitigation.trr import TrrMitigation
from disturbsim.types import MitigationKind

RP_KINDS = (MitigationKind.GRAPHENE_RP, MitigationKind.PARA_RP)


def build_mitigation(
    kind: MitigationKind | str,
    *,
    rows: int,
    timing: TimingParams,
    seed: int,
    graphene_threshold: int | None = None,
    para_p: float | None = None,
    trr_capacity: int = DEFAULT_TRR_CAPACITY,
    blast_radius: int = DEFAULT_BLAST_RADIUS,
) -> Mitigation:
    """Instantiate a defense; -RP kinds are the plain trackers with derived parameters."""
    kind = MitigationKind(kind)
    mitigation: Mitigation
    if kind is MitigationKind.NONE:
        mitigation = NoMitigation()
    elif kind is MitigationKind.TRR:
        mitigation = TrrMitigation(rows, trr_capacity)
    elif kind in (MitigationKind.GRAPHENE, MitigationKind.GRAPHENE_RP):
        if graphene_threshold is None:
            raise ConfigurationError("mitigation.graphene_T", f"required for '{kind.value}'")
        mitigation = GrapheneMitigation(graphene_threshold, timing, rows, blast_radius)
    else:
        if para_p is None:
            raise ConfigurationError("mitigation.para_p", f"required for '{kind.value}'")
        mitigation = ParaMitigation(para_p, rows, seed)
    mitigation.name = kind.value
    logger.debug("Mitigation built", kind=kind.value, **mitigation.stats())
    return mitigation


# 🔨💾🔚
