#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Command runs, sweeps and their output files."""

from __future__ import annotations

from disturbsim.harness.outputs import file_digest, summary_document, write_outcome
from disturbsim.harness.runs import (
    RunOutcome,
    attack_run,
    characterization_chip,
    characterize_run,
    resolve_run,
    simulate_run,
    simulate_trace,
)
from disturbsim.harness.sweep import (
    SWEEP_COMMANDS,
    SweepPoint,
    SweepTask,
    grid_points,
    load_grid,
    point_config,
    run_sweep_task,
    sweep_run,
)

__all__ = [
    "SWEEP_COMMANDS",
    "RunOutcome",
    "SweepPoint",
    "SweepTask",
    "attack_run",
    "characterization_chip",
    "characterize_run",
    "file_digest",
    "grid_points",
    "load_grid",
    "point_config",
    "resolve_run",
    "run_sweep_task",
    "simulate_run",
    "simulate_trace",
    "summary_document",
    "sweep_run",
    "write_outcome",
]

# 🔨💾🔚
