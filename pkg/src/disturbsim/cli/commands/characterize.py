# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Characterize command implementation."""

import asyncio
from pathlib import Path
import sys
from typing import Any

import click
from provide.foundation import pout
from provide.foundation.cli.decorators import flexible_options

from disturbsim.cli.helpers.options import resolve_output_dir, run_options
from disturbsim.cli.helpers.output import print_run_success, records_table, show
from disturbsim.config.loader import load_config
from disturbsim.error_handling import ErrorReporter
from disturbsim.harness.outputs import write_outcome
from disturbsim.harness.runs import characterize_run

# Columns shown per experiment; everything else is in the result files
TABLE_COLUMNS: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = {
    "acmin": (("row", "pattern", "t_agg_on", "temperature"), ("acmin",)),
    "taggon_min": (("row", "pattern", "activations", "temperature"), ("taggon_min",)),
    "ber": (("row", "delta_t_a2a", "on_fraction", "temperature"), ("ber", "flips")),
    "overlap": (("rows", "press_on_time"), ("press_hammer", "press_retention")),
    "ecc": (("rows", "t_agg_on"), ("1-2", "3-8", ">8", "max_per_word")),
    "retention": (("rows", "hold_ns", "temperature"), ("flips",)),
}


@click.command("characterize")
@flexible_options
@run_options
@click.option(
    "--experiment",
    "experiments",
    multiple=True,
    type=click.Choice(list(TABLE_COLUMNS)),
    help="Run only these experiments (default: search.experiments).",
)
def characterize_command(
    config_path: Path,
    overrides: tuple[str, ...],
    output_dir: Path | None,
    append: bool,
    experiments: tuple[str, ...],
    **kwargs: Any,
) -> None:
    """Run the AC_min, tAggON_min and BER grids against the simulated chip."""

    async def run() -> int:
        try:
            chosen = (f"search.experiments={list(experiments)!r}",) if experiments else ()
            config = load_config(config_path, (*overrides, *chosen))
            pout(f"🔬 Characterizing: {', '.join(config.search.experiments)}")
            outcome = characterize_run(config)
            files = write_outcome(outcome, config, resolve_output_dir(config, output_dir), append=append)
            for name in config.search.experiments:
                inputs, metrics = TABLE_COLUMNS[name]
                selected = [r for r in outcome.records if r.experiment == name]
                show(records_table(name, selected, inputs, metrics))
            print_run_success(outcome, files)
            return 0
        except Exception as e:
            return ErrorReporter.report(e)

    exit_code = asyncio.run(run())
    if exit_code != 0:
        sys.exit(exit_code)
