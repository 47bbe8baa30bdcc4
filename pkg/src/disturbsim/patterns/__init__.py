#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Access-pattern generators: direct-drive command logs and request traces."""

from __future__ import annotations

from disturbsim.patterns.direct import (
    DIRECT_KINDS,
    aggressor_rows,
    gen_direct,
    gen_rowhammer,
    max_activations,
)
from disturbsim.patterns.spec import PatternSpec
from disturbsim.patterns.traces import (
    RequestTrace,
    TraceBuilder,
    group_period,
    held_on_time,
    reads_for_on_time,
)
from disturbsim.patterns.trr_bypass import dummy_rows, gen_trr_bypass, read_spacing, window_groups
from disturbsim.patterns.workloads import (
    ADVERSARIAL_FAMILIES,
    adversarial_trace,
    gen_hot_bursts,
    gen_many_sided,
    gen_mixed_workload,
    gen_onoff_trace,
)

__all__ = [
    "ADVERSARIAL_FAMILIES",
    "DIRECT_KINDS",
    "PatternSpec",
    "RequestTrace",
    "TraceBuilder",
    "adversarial_trace",
    "aggressor_rows",
    "dummy_rows",
    "gen_direct",
    "gen_hot_bursts",
    "gen_many_sided",
    "gen_mixed_workload",
    "gen_onoff_trace",
    "gen_rowhammer",
    "gen_trr_bypass",
    "group_period",
    "held_on_time",
    "max_activations",
    "reads_for_on_time",
    "read_spacing",
    "window_groups",
]

# 🔨💾🔚
