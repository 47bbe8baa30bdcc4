#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Shared enumerations for disturbsim."""

from __future__ import annotations

from enum import Enum


class CommandKind(str, Enum):
    """DRAM command kinds."""

    ACT = "ACT"
    PRE = "PRE"
    RD = "RD"
    WR = "WR"
    REF = "REF"


class Mechanism(str, Enum):
    """Disturbance mechanism a cell is vulnerable to."""

    HAMMER = "hammer"
    PRESS = "press"
    RETENTION = "retention"


class FlipDirection(str, Enum):
    """Observed data change of a flipped cell."""

    ONE_TO_ZERO = "1to0"
    ZERO_TO_ONE = "0to1"

    def reversed(self) -> FlipDirection:
        return FlipDirection.ZERO_TO_ONE if self is FlipDirection.ONE_TO_ZERO else FlipDirection.ONE_TO_ZERO


class PatternKind(str, Enum):
    """Access pattern families."""

    SINGLE_SIDED = "single_sided"
    DOUBLE_SIDED = "double_sided"
    ONOFF = "onoff"
    TRR_BYPASS = "trr_bypass"
    MANY_SIDED = "many_sided"


class BypassVariant(str, Enum):
    """Read ordering of the TRR bypass request stream."""

    BATCHED_FLUSH = "batched_flush"
    INTERLEAVED_FLUSH = "interleaved_flush"


class RowPolicyKind(str, Enum):
    """Row-buffer management policies."""

    OPEN_PAGE = "open"
    CLOSED_PAGE = "closed"
    CAPPED_OPEN = "capped"


class MitigationKind(str, Enum):
    """Read-disturbance defenses selectable from configuration."""

    NONE = "none"
    TRR = "trr"
    GRAPHENE = "graphene"
    PARA = "para"
    GRAPHENE_RP = "graphene_rp"
    PARA_RP = "para_rp"


class RequestKind(str, Enum):
    """Memory request direction."""

    READ = "R"
    WRITE = "W"


# 🔨💾🔚
