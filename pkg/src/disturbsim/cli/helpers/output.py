# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Output formatting helpers for CLI commands."""

from collections.abc import Sequence
from pathlib import Path
from typing import Any

from provide.foundation import pout
from rich.console import Console
from rich.table import Table

from disturbsim.error_handling import ErrorReporter
from disturbsim.harness.outputs import file_digest
from disturbsim.harness.runs import RunOutcome
from disturbsim.results.records import ResultRecord


def _text(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.4g}"
    return str(value)


def records_table(title: str, records: Sequence[ResultRecord], inputs: Sequence[str], metrics: Sequence[str]) -> Table:
    """Selected input and metric columns of ``records`` as a rich table."""
    table = Table(title=title)
    for name in inputs:
        table.add_column(name)
    for name in metrics:
        table.add_column(name, justify="right")
    for record in records:
        table.add_row(
            *(_text(record.inputs.get(n)) for n in inputs),
            *(_text(record.metrics.get(n)) for n in metrics),
        )
    return table


def summary_table(title: str, summary: dict[str, Any]) -> Table:
    table = Table(title=title, show_header=False)
    table.add_column("metric")
    table.add_column("value", justify="right")
    for key, value in summary.items():
        if isinstance(value, (dict, list)):
            continue
        table.add_row(key, _text(value))
    return table


def show(table: Table) -> None:
    Console().print(table)


def print_run_success(outcome: RunOutcome, files: dict[str, Path]) -> None:
    """Print what a run wrote and the digest of its result file."""
    ErrorReporter.report_warnings(outcome.command, list(outcome.warnings))
    pout(f"✅ {outcome.command}: {len(outcome.records)} record(s)")
    for name in ("results", "table", "points", "summary"):
        if name in files:
            pout(f"  • {files[name]}")
    plots = [name for name in files if name.startswith("plotdata/")]
    if plots:
        pout(f"  • {len(plots)} plot table(s) in {files[plots[0]].parent}")
    pout(f"🔑 results sha256: {file_digest(files['results'])}")
