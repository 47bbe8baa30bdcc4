#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Parameter sweeps fanned across worker processes.

A grid file holds one ``[axes]`` table mapping dotted run-file keys to value
lists; the sweep runs the cartesian product in file order. Workers share
nothing: each writes its own part files, which are merged in grid order once
every worker is done, so the merged output does not depend on the worker count.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
import itertools
from pathlib import Path
import shutil
from typing import Any

from attrs import define, evolve
from provide.foundation import logger

from disturbsim.config.loader import config_from_dict, read_config_data, set_path
from disturbsim.config.presets import deep_merge
from disturbsim.config.run import RunConfig
from disturbsim.decorators import with_metrics
from disturbsim.errors import ConfigurationError
from disturbsim.harness.runs import RunOutcome, attack_run, characterize_run, resolve_run, simulate_run
from disturbsim.results.records import ResultRecord, read_results, write_results
from disturbsim.results.tables import read_table, write_table

SWEEP_COMMANDS = ("resolve", "attack", "characterize", "simulate")


@define(frozen=True, slots=True)
class SweepPoint:
    index: int
    values: dict[str, Any]


@define(frozen=True, slots=True)
class SweepTask:
    """Everything one worker needs; plain data so it pickles."""

    worker: int
    points: tuple[SweepPoint, ...]
    base: dict[str, Any]
    command: str
    parts_dir: Path
    trace: Path | None = None


def load_grid(path: Path) -> dict[str, list[Any]]:
    """Axes of a grid file, in file order."""
    data = read_config_data(path)
    axes = data.get("axes")
    if not isinstance(axes, dict) or not axes:
        raise ConfigurationError("axes", "grid file needs a non-empty [axes] table", path)
    unknown = set(data) - {"axes"}
    if unknown:
        raise ConfigurationError(sorted(unknown)[0], "unknown key", path)
    for key, values in axes.items():
        if not isinstance(values, list) or not values:
            raise ConfigurationError(f"axes.{key}", "must be a non-empty list", path)
    return {key: list(values) for key, values in axes.items()}


def grid_points(axes: Mapping[str, Sequence[Any]]) -> list[SweepPoint]:
    keys = list(axes)
    return [
        SweepPoint(index, dict(zip(keys, combo, strict=True)))
        for index, combo in enumerate(itertools.product(*(axes[k] for k in keys)))
    ]


def point_config(base: dict[str, Any], point: SweepPoint) -> RunConfig:
    data = deep_merge({}, base)
    for key, value in point.values.items():
        set_path(data, key.split("."), value)
    try:
        return config_from_dict(data)
    except ConfigurationError as e:
        raise ConfigurationError(e.config_key, f"grid point {point.index}: {e.reason}") from e


def _runner(command: str, trace: Path | None) -> Callable[[RunConfig], RunOutcome]:
    if command == "simulate":
        if trace is None:
            raise ConfigurationError("sweep.command", "'simulate' sweeps need a trace file")
        return lambda config: simulate_run(config, trace)
    runners: dict[str, Callable[[RunConfig], RunOutcome]] = {
        "resolve": resolve_run,
        "attack": attack_run,
        "characterize": characterize_run,
    }
    if command not in runners:
        raise ConfigurationError("sweep.command", f"must be one of {list(SWEEP_COMMANDS)}")
    return runners[command]


def _scalars(values: Mapping[str, Any]) -> dict[str, Any]:
    return {k: v for k, v in values.items() if v is None or isinstance(v, (str, int, float, bool))}


def point_row(point: SweepPoint, config: RunConfig, outcome: RunOutcome) -> dict[str, Any]:
    """One sweep table row: the grid values, the resolved defense and the run summary scalars."""
    resolved = config.resolved_mitigation()
    return {
        "point": point.index,
        **point.values,
        "mitigation": resolved.kind.value,
        "t_rh_prime": resolved.t_rh_prime,
        "graphene_T": resolved.graphene_threshold,
        "para_p": resolved.para_p,
        **{f"out.{k}": v for k, v in _scalars(outcome.summary).items()},
    }


def part_paths(parts_dir: Path, worker: int) -> tuple[Path, Path]:
    return parts_dir / f"worker-{worker}.csv", parts_dir / f"worker-{worker}.results.jsonl"


def run_sweep_task(task: SweepTask) -> int:
    """Run a worker's points and write its part files; returns the number of points done."""
    runner = _runner(task.command, task.trace)
    rows: list[dict[str, Any]] = []
    records: list[ResultRecord] = []
    for point in task.points:
        config = point_config(task.base, point)
        outcome = runner(config)
        rows.append(point_row(point, config, outcome))
        records.extend(evolve(r, inputs={"point": point.index, **r.inputs}) for r in outcome.records)
        logger.debug("Sweep point done", worker=task.worker, point=point.index)
    table, results = part_paths(task.parts_dir, task.worker)
    columns = sorted({key for row in rows for key in row})
    write_table(table, "sweep.part", columns, rows)
    write_results(results, records, append=False)
    return len(task.points)


def _merge_parts(parts_dir: Path, workers: int) -> tuple[list[dict[str, str]], list[ResultRecord]]:
    rows: list[dict[str, str]] = []
    records: list[ResultRecord] = []
    for worker in range(workers):
        table, results = part_paths(parts_dir, worker)
        rows.extend(read_table(table)[1])
        records.extend(read_results(results))
    rows.sort(key=lambda row: int(row["point"]))
    records.sort(key=lambda record: int(record.inputs["point"]))
    return rows, records


@with_metrics("sweep")
def sweep_run(
    base: dict[str, Any],
    axes: Mapping[str, Sequence[Any]],
    out_dir: Path,
    *,
    command: str = "resolve",
    workers: int = 1,
    trace: Path | None = None,
) -> tuple[RunOutcome, Path]:
    """Run every grid point and merge the workers' parts into ``out_dir/sweep.points.csv``.

    Raises:
        ConfigurationError: if any grid point fails validation (checked before any work starts)
    """
    _runner(command, trace)
    points = grid_points(axes)
    for point in points:
        point_config(base, point)
    workers = max(1, min(workers, len(points)))
    parts_dir = out_dir / "sweep.parts"
    parts_dir.mkdir(parents=True, exist_ok=True)
    tasks = [
        SweepTask(worker, tuple(points[worker::workers]), base, command, parts_dir, trace)
        for worker in range(workers)
    ]
    logger.info("Sweep starting", points=len(points), workers=workers, command=command)
    if workers == 1:
        run_sweep_task(tasks[0])
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run_sweep_task, tasks))

    rows, records = _merge_parts(parts_dir, workers)
    keys = list(axes)
    rest = sorted({key for row in rows for key in row} - {"point", *keys})
    merged = out_dir / "sweep.points.csv"
    write_table(merged, "sweep", ["point", *keys, *rest], rows)
    shutil.rmtree(parts_dir)
    summary = {"command": command, "points": len(points), "axes": keys}
    return RunOutcome("sweep", records, summary), merged


# 🔨💾🔚
