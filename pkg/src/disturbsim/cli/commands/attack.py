# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Attack command implementation."""

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
from disturbsim.harness.runs import attack_run


@click.command("attack")
@flexible_options
@run_options
def attack_command(
    config_path: Path,
    overrides: tuple[str, ...],
    output_dir: Path | None,
    append: bool,
    **kwargs: Any,
) -> None:
    """Run TRR-bypassing RowPress traces against the configured defense."""

    async def run() -> int:
        try:
            config = load_config(config_path, overrides)
            pout(
                f"🔨 Attacking {config.mitigation.kind.value} over "
                f"{len(config.attack.num_aggr_acts)}x{len(config.attack.num_reads)} points"
            )
            outcome = attack_run(config)
            files = write_outcome(outcome, config, resolve_output_dir(config, output_dir), append=append)
            show(
                records_table(
                    "attack",
                    outcome.records,
                    ("num_aggr_acts", "num_reads"),
                    ("bitflips", "rows_with_bitflips", "preventive_refreshes"),
                )
            )
            print_run_success(outcome, files)
            return 0
        except Exception as e:
            return ErrorReporter.report(e)

    exit_code = asyncio.run(run())
    if exit_code != 0:
        sys.exit(exit_code)
