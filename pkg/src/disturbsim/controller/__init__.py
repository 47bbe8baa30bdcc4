#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Memory controller: request queues, FR-FCFS scheduling, row policies and refresh."""

from __future__ import annotations

from disturbsim.controller.policy import RowPolicy
from disturbsim.controller.requests import (
    AddressMapping,
    MemoryRequest,
    format_trace_line,
    parse_trace,
    parse_trace_lines,
    write_trace,
)
from disturbsim.controller.scheduler import BankQueue, RefreshState, Scheduler
from disturbsim.controller.simulation import SimulationReport, SimulationSetup, run_trace

__all__ = [
    "AddressMapping",
    "BankQueue",
    "MemoryRequest",
    "RefreshState",
    "RowPolicy",
    "Scheduler",
    "SimulationReport",
    "SimulationSetup",
    "format_trace_line",
    "parse_trace",
    "parse_trace_lines",
    "run_trace",
    "write_trace",
]

# 🔨💾🔚
