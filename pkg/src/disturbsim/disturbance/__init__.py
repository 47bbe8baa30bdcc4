#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Read-disturbance fault model: dose curves, ledger, cells and bitflips."""

from __future__ import annotations

from disturbsim.disturbance.cells import CellConfig, CellProfile, CellSampler, RetentionCell, VulnerableCell
from disturbsim.disturbance.curves import DoseCurve, dose_of
from disturbsim.disturbance.faults import Bitflip, collect_bitflips, flipped_cells, rows_with_bitflips
from disturbsim.disturbance.ledger import DisturbanceLedger, record_activation, refresh_row
from disturbsim.disturbance.model import (
    MODEL_FACTORIES,
    MechanismModel,
    acmin_closed_form,
    acmin_exact,
    default_model,
    per_aggressor_acts,
    published_model,
    tagg_on_min_closed_form,
)

__all__ = [
    "MODEL_FACTORIES",
    "Bitflip",
    "CellConfig",
    "CellProfile",
    "CellSampler",
    "DisturbanceLedger",
    "DoseCurve",
    "MechanismModel",
    "RetentionCell",
    "VulnerableCell",
    "acmin_closed_form",
    "acmin_exact",
    "collect_bitflips",
    "default_model",
    "dose_of",
    "flipped_cells",
    "per_aggressor_acts",
    "record_activation",
    "refresh_row",
    "rows_with_bitflips",
    "published_model",
    "tagg_on_min_closed_form",
]

# 🔨💾🔚
