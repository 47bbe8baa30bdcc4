#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Comma-separated tables with a one-line schema header.

Every table starts with ``# schema=<name> version=<n>``, followed by the
column header row. Readers skip the first line and hand the rest to
``csv.DictReader``.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
import csv
from pathlib import Path
from typing import Any

from provide.foundation import logger

from disturbsim.config.defaults import RESULT_SCHEMA, RESULT_SCHEMA_VERSION
from disturbsim.errors import FileSystemError
from disturbsim.results.records import ResultRecord


def table_header(table: str) -> str:
    return f"# schema={RESULT_SCHEMA}.{table} version={RESULT_SCHEMA_VERSION}"


def _cell(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return value


def write_table(path: Path, table: str, columns: Sequence[str], rows: Iterable[Mapping[str, Any]]) -> int:
    """Write ``rows`` under a fixed column order; missing cells are left empty."""
    count = 0
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as handle:
            handle.write(table_header(table) + "\n")
            writer = csv.DictWriter(handle, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({key: _cell(value) for key, value in row.items()})
                count += 1
    except OSError as e:
        raise FileSystemError(path, "write", str(e), caused_by=e) from e
    logger.debug("Table written", path=str(path), table=table, rows=count)
    return count


def read_table(path: Path) -> tuple[str, list[dict[str, str]]]:
    """Return the header line and every row of a table written by :func:`write_table`."""
    try:
        with path.open(encoding="utf-8", newline="") as handle:
            header = handle.readline().rstrip("\n")
            rows = list(csv.DictReader(handle))
    except OSError as e:
        raise FileSystemError(path, "read", str(e), caused_by=e) from e
    if not header.startswith(f"# schema={RESULT_SCHEMA}."):
        raise FileSystemError(path, "read", "missing schema header line")
    return header, rows


def flatten_record(record: ResultRecord) -> dict[str, Any]:
    """Scalar inputs and metrics of a record as one flat row; nested values are dropped."""
    row: dict[str, Any] = {"experiment": record.experiment}
    for prefix, values in (("in", record.inputs), ("out", record.metrics)):
        for key, value in values.items():
            if value is None or isinstance(value, (str, int, float, bool)):
                row[f"{prefix}.{key}"] = value
    if record.wall_clock_s is not None:
        row["wall_clock_s"] = record.wall_clock_s
    return row


def write_records_table(path: Path, records: Sequence[ResultRecord]) -> int:
    """Flat table of records; columns are the sorted union of every record's scalar keys."""
    rows = [flatten_record(r) for r in records]
    keys = sorted({key for row in rows for key in row} - {"experiment"})
    return write_table(path, "records", ["experiment", *keys], rows)


# 🔨💾🔚
