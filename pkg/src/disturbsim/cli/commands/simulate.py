# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Simulate command implementation."""

import asyncio
from pathlib import Path
import sys
from typing import Any

import click
from provide.foundation import pout
from provide.foundation.cli.decorators import flexible_options

from disturbsim.cli.helpers.options import resolve_output_dir, run_options
from disturbsim.cli.helpers.output import print_run_success, show, summary_table
from disturbsim.config.loader import load_config
from disturbsim.error_handling import ErrorReporter
from disturbsim.harness.outputs import write_outcome
from disturbsim.harness.runs import simulate_run


@click.command("simulate")
@flexible_options
@run_options
@click.argument("trace_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option(
    "--duration",
    type=click.IntRange(min=0),
    help="Simulated time in ns (default: the last arrival time).",
)
def simulate_command(
    config_path: Path,
    trace_path: Path,
    overrides: tuple[str, ...],
    output_dir: Path | None,
    append: bool,
    duration: int | None,
    **kwargs: Any,
) -> None:
    """Run a request trace through the controller, defense and disturbance model."""

    async def run() -> int:
        try:
            config = load_config(config_path, overrides)
            pout(f"🧪 Simulating {trace_path.name} with {config.controller.policy().describe()}")
            outcome = simulate_run(config, trace_path, duration=duration)
            files = write_outcome(outcome, config, resolve_output_dir(config, output_dir), append=append)
            show(summary_table("simulation", outcome.summary))
            print_run_success(outcome, files)
            return 0
        except Exception as e:
            return ErrorReporter.report(e)

    exit_code = asyncio.run(run())
    if exit_code != 0:
        sys.exit(exit_code)
