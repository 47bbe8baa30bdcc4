#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Read-disturbance defenses and the row-open-time adaptation calculus."""

from __future__ import annotations

from disturbsim.mitigation.base import Mitigation, NoMitigation, neighbor_targets
from disturbsim.mitigation.factory import RP_KINDS, build_mitigation
from disturbsim.mitigation.graphene import (
    GrapheneMitigation,
    GrapheneTracker,
    graphene_observe,
    graphene_table_size,
)
from disturbsim.mitigation.para import ParaMitigation, ParaTracker, para_observe
from disturbsim.mitigation.rp import (
    RpAdaptation,
    derive_rp_config,
    graphene_threshold,
    para_probability,
    published_adaptation,
)
from disturbsim.mitigation.trr import TrrMitigation, TrrSampler, trr_observe, trr_on_ref

__all__ = [
    "RP_KINDS",
    "GrapheneMitigation",
    "GrapheneTracker",
    "Mitigation",
    "NoMitigation",
    "ParaMitigation",
    "ParaTracker",
    "RpAdaptation",
    "TrrMitigation",
    "TrrSampler",
    "build_mitigation",
    "derive_rp_config",
    "graphene_observe",
    "graphene_table_size",
    "graphene_threshold",
    "neighbor_targets",
    "para_observe",
    "para_probability",
    "published_adaptation",
    "trr_observe",
    "trr_on_ref",
]

# 🔨💾🔚
