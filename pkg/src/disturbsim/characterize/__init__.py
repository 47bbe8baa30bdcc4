#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Characterization harness run against the simulated chip."""

from __future__ import annotations

from disturbsim.characterize.analysis import (
    ECC_BINS,
    ROW_PRESETS,
    EccHistogram,
    direction_fractions,
    ecc_word_histogram,
    loglog_slope,
    overlap,
    select_rows,
)
from disturbsim.characterize.ber import BerResult, measure_ber
from disturbsim.characterize.chip import ChipRun, SimulatedChip
from disturbsim.characterize.experiments import (
    acmin_experiment,
    ber_onoff_experiment,
    ecc_experiment,
    overlap_experiment,
    retention_experiment,
    taggon_experiment,
)
from disturbsim.characterize.search import (
    SearchConfig,
    bisect_grid,
    find_acmin,
    find_taggon_min,
    repeat_seeds,
    taggon_grid,
    tolerance,
)

__all__ = [
    "ECC_BINS",
    "ROW_PRESETS",
    "BerResult",
    "ChipRun",
    "EccHistogram",
    "SearchConfig",
    "SimulatedChip",
    "acmin_experiment",
    "ber_onoff_experiment",
    "bisect_grid",
    "direction_fractions",
    "ecc_experiment",
    "ecc_word_histogram",
    "find_acmin",
    "find_taggon_min",
    "loglog_slope",
    "measure_ber",
    "overlap",
    "overlap_experiment",
    "repeat_seeds",
    "retention_experiment",
    "select_rows",
    "taggon_experiment",
    "taggon_grid",
    "tolerance",
]

# 🔨💾🔚
