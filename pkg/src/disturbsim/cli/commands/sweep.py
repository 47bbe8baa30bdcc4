# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Sweep command implementation."""

import asyncio
from pathlib import Path
import sys
from typing import Any

import click
from provide.foundation import pout
from provide.foundation.cli.decorators import flexible_options

from disturbsim.cli.helpers.options import resolve_output_dir, run_options
from disturbsim.cli.helpers.output import print_run_success
from disturbsim.config import get_config
from disturbsim.config.loader import apply_overrides, config_from_dict, read_config_data
from disturbsim.error_handling import ErrorReporter
from disturbsim.harness.outputs import write_outcome
from disturbsim.harness.sweep import SWEEP_COMMANDS, load_grid, sweep_run


@click.command("sweep")
@flexible_options
@run_options
@click.option(
    "--grid",
    "grid_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Grid file with an [axes] table of dotted keys to value lists.",
)
@click.option(
    "--command",
    "command",
    type=click.Choice(SWEEP_COMMANDS),
    default="resolve",
    show_default=True,
    help="What to run at every grid point.",
)
@click.option(
    "--trace",
    "trace_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Request trace for '--command simulate'.",
)
@click.option(
    "--workers",
    type=click.IntRange(min=1),
    help="Parallel workers (default: DISTURBSIM_WORKERS).",
)
def sweep_command(
    config_path: Path,
    overrides: tuple[str, ...],
    output_dir: Path | None,
    append: bool,
    grid_path: Path,
    command: str,
    trace_path: Path | None,
    workers: int | None,
    **kwargs: Any,
) -> None:
    """Fan a parameter grid across parallel workers."""

    async def run() -> int:
        try:
            base = apply_overrides(read_config_data(config_path), overrides)
            config = config_from_dict(base, source=config_path)
            axes = load_grid(grid_path)
            out_dir = resolve_output_dir(config, output_dir)
            count = workers or get_config().workers
            pout(f"🧮 Sweeping {', '.join(axes)} with '{command}' on {count} worker(s)")
            outcome, points = sweep_run(base, axes, out_dir, command=command, workers=count, trace=trace_path)
            files = write_outcome(outcome, config, out_dir, append=append, extra_files={"points": points})
            print_run_success(outcome, files)
            return 0
        except Exception as e:
            return ErrorReporter.report(e)

    exit_code = asyncio.run(run())
    if exit_code != 0:
        sys.exit(exit_code)
