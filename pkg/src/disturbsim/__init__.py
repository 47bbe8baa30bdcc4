#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Trace-driven DRAM controller simulation with a read-disturbance model.

disturbsim couples a DDR4 memory controller (FR-FCFS scheduling, open and
capped-open row policies, periodic refresh) to a model of RowHammer and
RowPress: every closed row deposits a dose on its neighbors that depends on
how long it stayed open. Defenses (TRR, Graphene, PARA and their RowPress
adapted variants) observe the activation stream and issue preventive refreshes.

Example Usage:
    ```python
    from disturbsim import PatternSpec, RunConfig, TimingParams, gen_trr_bypass, run_trace
    from disturbsim.types import PatternKind

    config = RunConfig().validate()
    spec = PatternSpec(kind=PatternKind.TRR_BYPASS, num_reads=16, num_aggr_acts=3)
    trace = gen_trr_bypass(spec, config.geometry, config.timing)
    report = run_trace(
        trace.requests,
        config.controller.policy(),
        config.build_mitigation(),
        config.build_model(),
        trace.duration,
        config.simulation_setup(),
    )
    print(report.rows_with_bitflips)
    ```

CLI Usage:
    ```bash
    disturbsim simulate run.toml trace.txt
    disturbsim characterize run.toml --set search.temperatures=[50,80]
    disturbsim attack run.toml --set mitigation.kind=trr
    disturbsim sweep run.toml --grid grid.toml --command resolve
    disturbsim presets
    ```"""

from disturbsim._version import __version__
from disturbsim.characterize import SearchConfig, SimulatedChip, find_acmin, find_taggon_min
from disturbsim.config.loader import config_from_dict, load_config, serialize_config
from disturbsim.config.run import RunConfig
from disturbsim.controller import MemoryRequest, RowPolicy, SimulationReport, SimulationSetup, run_trace
from disturbsim.decorators import with_metrics, with_timing
from disturbsim.disturbance import MechanismModel, collect_bitflips, default_model, published_model
from disturbsim.dram import DramDevice, Geometry, TimingParams
from disturbsim.errors import (
    ConfigurationError,
    ContractViolationError,
    DisturbSimError,
    IllegalCommandError,
)
from disturbsim.harness import attack_run, characterize_run, simulate_run, sweep_run
from disturbsim.mitigation import build_mitigation, derive_rp_config
from disturbsim.patterns import PatternSpec, gen_direct, gen_trr_bypass
from disturbsim.results import ResultRecord, emit_plotdata, read_results, write_results

__all__ = [
    "ConfigurationError",
    "ContractViolationError",
    "DisturbSimError",
    "DramDevice",
    "Geometry",
    "IllegalCommandError",
    "MechanismModel",
    "MemoryRequest",
    "PatternSpec",
    "ResultRecord",
    "RowPolicy",
    "RunConfig",
    "SearchConfig",
    "SimulatedChip",
    "SimulationReport",
    "SimulationSetup",
    "TimingParams",
    "__version__",
    "attack_run",
    "build_mitigation",
    "characterize_run",
    "collect_bitflips",
    "config_from_dict",
    "default_model",
    "derive_rp_config",
    "emit_plotdata",
    "find_acmin",
    "find_taggon_min",
    "gen_direct",
    "gen_trr_bypass",
    "load_config",
    "read_results",
    "run_trace",
    "serialize_config",
    "simulate_run",
    "sweep_run",
    "published_model",
    "with_metrics",
    "with_timing",
]

# 🔨💾🔚
