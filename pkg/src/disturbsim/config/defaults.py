#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Centralized default values for disturbsim configuration.

All defaults are defined here instead of inline in field definitions.
Times are integer nanoseconds unless the name says otherwise.
"""

from __future__ import annotations

# =================================
# DDR4 timing defaults
# =================================
DEFAULT_TRAS = 36
DEFAULT_TRP = 15
DEFAULT_TRCD = 15
DEFAULT_TCOL = 15
DEFAULT_TREFI = 7_800
DEFAULT_REFRESH_SLOTS = 8_192
DEFAULT_TREFW = DEFAULT_REFRESH_SLOTS * DEFAULT_TREFI  # 63.9 ms, the nominal 64 ms window
DEFAULT_TRFC = 350
DEFAULT_MAX_POSTPONED_REFS = 8
MAX_POSTPONED_REFS_LIMIT = 8

# Named timing sets; unlisted TimingParams fields take the defaults above
TIMING_PRESETS: dict[str, dict[str, int]] = {
    "ddr4": {},
    "ddr4_2400": {"tRAS": 32, "tRP": 14, "tRCD": 14, "tCOL": 14},
    "ddr4_3200": {"tRAS": 32, "tRP": 14, "tRCD": 14, "tCOL": 10},
}

# =================================
# Geometry defaults
# =================================
DEFAULT_CHANNELS = 1
DEFAULT_RANKS = 1
DEFAULT_BANKGROUPS = 4
DEFAULT_BANKS_PER_GROUP = 4
DEFAULT_ROWS = 65_536
DEFAULT_COLUMNS = 8_192
DEFAULT_ROW_XOR_MASK = 0

# Address bit slicing, LSB to MSB
DEFAULT_OFFSET_BITS = 6
DEFAULT_COLUMN_BITS = 7
DEFAULT_BANKGROUP_BITS = 2
DEFAULT_BANK_BITS = 2
DEFAULT_RANK_BITS = 0
DEFAULT_CHANNEL_BITS = 0
DEFAULT_ROW_BITS = 16

# =================================
# Disturbance model defaults
# =================================
DEFAULT_TEMPERATURE_C = 50.0
DEFAULT_THETA_H = 1_000.0
PRESS_THRESHOLD_DIVISOR = 21.0
DEFAULT_HAMMER_ANCHORS: tuple[tuple[float, float], ...] = ((36.0, 1.0), (7_800.0, 1.0))
DEFAULT_HAMMER_TAIL_SLOPE = 0.0
DEFAULT_PRESS_ANCHORS: tuple[tuple[float, float], ...] = (
    (36.0, 0.02),
    (186.0, 0.0557),
    (7_800.0, 1.0),
    (70_200.0, 9.048),
)
DEFAULT_PRESS_TAIL_SLOPE = 1.0
DEFAULT_DISTANCE_COUPLING: tuple[float, float, float] = (1.0, 0.05, 0.01)
MAX_COUPLING_DISTANCE = 3

# Source characterization reproducing the published (t_mro, T'_RH) table
PUBLISHED_PRESS_ANCHORS: tuple[tuple[float, float], ...] = (
    (36.0, 0.04),
    (66.0, 0.05886),
    (96.0, 0.06577),
    (186.0, 0.07693),
    (336.0, 0.0858),
    (636.0, 0.11365),
    (7_800.0, 1.0),
    (70_200.0, 9.048),
)

# Press dose factor at 80 °C relative to 50 °C is 1 / (AC_min reduction)
MANUFACTURER_PRESS_REDUCTION_80C: dict[str, float] = {"mfr_s": 0.55, "mfr_h": 0.32, "mfr_m": 0.59}
DEFAULT_MANUFACTURER = "mfr_s"
REFERENCE_TEMPERATURE_C = 50.0
HOT_TEMPERATURE_C = 80.0

# Relative tolerance when comparing accumulated dose against a threshold
DOSE_EPSILON = 1e-9

# =================================
# Cell population defaults
# =================================
DEFAULT_HAMMER_CELLS_MEAN = 15.0
DEFAULT_PRESS_CLUSTERS_MEAN = 2.0
DEFAULT_PRESS_CLUSTER_SIZE_MEAN = 6.0
DEFAULT_RETENTION_CELLS_MEAN = 4.0
DEFAULT_MULTIPLIER_SIGMA = 0.2
# per-cell sharing probabilities; measured overlaps stay under 0.013 % and 0.34 %
DEFAULT_PRESS_HAMMER_OVERLAP = 0.00006
DEFAULT_PRESS_RETENTION_OVERLAP = 0.0017
DEFAULT_RETENTION_BUDGET_NS_80C = 1_000_000_000
RETENTION_DOUBLING_C = 10.0
WORD_BITS = 64

# =================================
# Controller defaults
# =================================
DEFAULT_SEED = 0
DEFAULT_QUEUE_CAPACITY = 64
DEFAULT_HORIZON_NS = DEFAULT_TREFW

# =================================
# Mitigation defaults
# =================================
DEFAULT_T_RH = 1_000
DEFAULT_TRR_CAPACITY = 4
DEFAULT_BLAST_RADIUS = 2
DEFAULT_PARA_FAILURE_PROBABILITY = 1e-15
GRAPHENE_T_DIVISOR = 3
PARA_RANDOM_BLOCK = 4_096

# Published RP configurations: t_mro -> (T'_RH, PARA p)
PUBLISHED_RP_CONFIGS: dict[int, tuple[int, float]] = {
    36: (1000, 0.034),
    66: (809, 0.042),
    96: (724, 0.047),
    186: (619, 0.054),
    336: (555, 0.061),
    636: (419, 0.079),
}

# =================================
# Pattern defaults
# =================================
DEFAULT_BUDGET_NS = 60_000_000
DEFAULT_NUM_DUMMY = 16
DEFAULT_DUMMY_ACTS = 4
DEFAULT_DUMMY_MIN_DISTANCE = 100
DEFAULT_SYNC_OFFSET_NS = 400
DEFAULT_VICTIM_ROW = 30_000
DEFAULT_ITERATIONS = 140

# =================================
# Search defaults
# =================================
DEFAULT_ACCURACY = 0.01
DEFAULT_REPEATS = 5
DEFAULT_TAGGON_STEP_NS = 30
MAX_TAGGON_NS = 30_000_000
ROWS_PER_REGION = 1_024
DEFAULT_RETENTION_HOLD_NS = 4_000_000_000
DEFAULT_PRESS_ON_TIME_NS = 7_800

# =================================
# Output defaults
# =================================
RESULT_SCHEMA = "disturbsim.results"
RESULT_SCHEMA_VERSION = 1
DEFAULT_OUTPUT_DIR = "./results"
DEFAULT_WORKERS = 4

# =================================
# Environment variable names
# =================================
ENV_DISTURBSIM_WORKERS = "DISTURBSIM_WORKERS"
ENV_DISTURBSIM_OUTPUT_DIR = "DISTURBSIM_OUTPUT_DIR"

# 🔨💾🔚
