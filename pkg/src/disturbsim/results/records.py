#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Append-only JSON-lines result files with a schema header line.

The first line of every result file is ``{"schema": ..., "version": ...}``;
each following line is one :class:`ResultRecord`. Keys are written sorted so
equal records always serialize to equal bytes.
"""

from __future__ import annotations

from collections.abc import Iterable
from enum import Enum
import json
from pathlib import Path
from typing import Any

from attrs import define, field
from provide.foundation import logger

from disturbsim.config.defaults import RESULT_SCHEMA, RESULT_SCHEMA_VERSION
from disturbsim.errors import FileSystemError


def plain_value(value: Any) -> Any:
    """JSON-friendly copy: enums to values, tuples to lists, numpy scalars to Python."""
    if isinstance(value, dict):
        return {str(k): plain_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [plain_value(v) for v in value]
        return sorted(items, key=repr) if isinstance(value, (set, frozenset)) else items
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    if hasattr(value, "item"):
        return value.item()
    return value


@define(frozen=True, slots=True)
class ResultRecord:
    """One measured cell: what was run and what came out."""

    experiment: str
    inputs: dict[str, Any] = field(factory=dict, converter=plain_value)
    metrics: dict[str, Any] = field(factory=dict, converter=plain_value)
    wall_clock_s: float | None = None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"experiment": self.experiment, "inputs": self.inputs, "metrics": self.metrics}
        if self.wall_clock_s is not None:
            data["wall_clock_s"] = round(self.wall_clock_s, 6)
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ResultRecord:
        return cls(data["experiment"], data.get("inputs", {}), data.get("metrics", {}), data.get("wall_clock_s"))


def schema_header() -> str:
    return json.dumps({"schema": RESULT_SCHEMA, "version": RESULT_SCHEMA_VERSION}, sort_keys=True)


def write_results(path: Path, records: Iterable[ResultRecord], *, append: bool = True) -> int:
    """Append records to ``path``, writing the header first if the file is new.

    Raises:
        FileSystemError: on I/O failure or if an existing file has another schema
    """
    existing = path.exists() and path.stat().st_size > 0
    if existing and append:
        _check_header(path)
    count = 0
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("a" if append else "w", encoding="utf-8") as handle:
            if not (existing and append):
                handle.write(schema_header() + "\n")
            for record in records:
                handle.write(record.to_json() + "\n")
                count += 1
    except OSError as e:
        raise FileSystemError(path, "write", str(e), caused_by=e) from e
    logger.debug("Results written", path=str(path), records=count)
    return count


def _check_header(path: Path) -> None:
    try:
        with path.open(encoding="utf-8") as handle:
            first = handle.readline()
    except OSError as e:
        raise FileSystemError(path, "read", str(e), caused_by=e) from e
    try:
        header = json.loads(first)
    except json.JSONDecodeError:
        header = None
    if not isinstance(header, dict) or header.get("schema") != RESULT_SCHEMA:
        raise FileSystemError(path, "read", "not a disturbsim result file (missing schema header)")
    if header.get("version") != RESULT_SCHEMA_VERSION:
        raise FileSystemError(
            path, "read", f"result schema version {header.get('version')} is not {RESULT_SCHEMA_VERSION}"
        )


def read_results(path: Path) -> list[ResultRecord]:
    """All records of a result file, in file order."""
    _check_header(path)
    records: list[ResultRecord] = []
    try:
        lines = path.read_text(encoding="utf-8").splitlines()[1:]
    except OSError as e:
        raise FileSystemError(path, "read", str(e), caused_by=e) from e
    for number, line in enumerate(lines, start=2):
        if not line.strip():
            continue
        try:
            records.append(ResultRecord.from_dict(json.loads(line)))
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise FileSystemError(path, "read", f"line {number}: {e}") from e
    return records


# 🔨💾🔚
