#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Writing a run's result files and its summary document."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from provide.foundation import logger

from disturbsim._version import __version__
from disturbsim.config.defaults import RESULT_SCHEMA, RESULT_SCHEMA_VERSION
from disturbsim.config.loader import config_digest, config_to_dict
from disturbsim.config.run import RunConfig
from disturbsim.errors import FileSystemError
from disturbsim.harness.runs import RunOutcome
from disturbsim.results.plotdata import emit_plotdata
from disturbsim.results.records import plain_value, write_results
from disturbsim.results.tables import write_records_table


def file_digest(path: Path) -> str:
    try:
        return hashlib.sha256(path.read_bytes()).hexdigest()
    except OSError as e:
        raise FileSystemError(path, "read", str(e), caused_by=e) from e


def summary_document(
    outcome: RunOutcome, config: RunConfig, files: dict[str, Path], out_dir: Path
) -> dict[str, Any]:
    """Self-describing summary of one run; contains nothing that varies between equal runs."""
    return {
        "schema": f"{RESULT_SCHEMA}.summary",
        "version": RESULT_SCHEMA_VERSION,
        "disturbsim": __version__,
        "command": outcome.command,
        "config_digest": config_digest(config),
        "config": config_to_dict(config),
        "records": len(outcome.records),
        "summary": plain_value(outcome.summary),
        "warnings": list(outcome.warnings),
        "files": {
            name: {"path": path.relative_to(out_dir).as_posix(), "sha256": file_digest(path)}
            for name, path in sorted(files.items())
        },
    }


def write_outcome(
    outcome: RunOutcome,
    config: RunConfig,
    out_dir: Path,
    *,
    append: bool = False,
    extra_files: dict[str, Path] | None = None,
) -> dict[str, Path]:
    """Write results (JSON lines), the flat table, plot tables and the summary into ``out_dir``.

    ``extra_files`` already written by the caller are listed in the summary with their digests.
    """
    stem = outcome.command
    results = out_dir / f"{stem}.results.jsonl"
    table = out_dir / f"{stem}.csv"
    write_results(results, outcome.records, append=append)
    write_records_table(table, outcome.records)
    files = {"results": results, "table": table, **(extra_files or {})}
    if config.output.plotdata:
        for family, path in emit_plotdata(outcome.records, out_dir / "plotdata").items():
            files[f"plotdata/{family}"] = path
    summary_path = out_dir / f"{stem}.summary.json"
    document = summary_document(outcome, config, files, out_dir)
    try:
        summary_path.write_text(json.dumps(document, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        raise FileSystemError(summary_path, "write", str(e), caused_by=e) from e
    files["summary"] = summary_path
    logger.info("Run outputs written", command=stem, out_dir=str(out_dir), files=len(files))
    return files


# 🔨💾🔚
