#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Plot-ready tables, one file per figure family.

Column schemas (stable; documented in docs/results.md):

- ``acmin-vs-taggon``: one row per (t_agg_on, pattern, temperature), aggregated over rows
- ``taggonmin-vs-ac``: one row per (activations, pattern, temperature), aggregated over rows
- ``ber-onoff``: one row per BER measurement
- ``overlap``: one row per overlap measurement
- ``ecc-hist``: one row per histogram
- ``attack-bars``: one row per (num_aggr_acts, num_reads) attack run
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Callable, Iterable, Sequence
from pathlib import Path
from typing import Any

from attrs import define
import numpy as np

from disturbsim.characterize.analysis import ECC_BINS
from disturbsim.results.records import ResultRecord
from disturbsim.results.tables import write_table


def _spread(values: list[int | None]) -> dict[str, Any]:
    found = [v for v in values if v is not None]
    if not found:
        return {"min": None, "median": None, "max": None, "no_bitflip_rows": len(values)}
    return {
        "min": min(found),
        "median": float(np.median(found)),
        "max": max(found),
        "no_bitflip_rows": len(values) - len(found),
    }


def _grouped(records: Sequence[ResultRecord], axis: str, metric: str) -> list[dict[str, Any]]:
    groups: dict[tuple[Any, ...], list[int | None]] = defaultdict(list)
    for record in records:
        key = (record.inputs[axis], record.inputs["pattern"], record.inputs["temperature"])
        groups[key].append(record.metrics.get(metric))
    rows = []
    for (value, pattern, temperature), found in groups.items():
        spread = _spread(found)
        rows.append(
            {
                axis: value,
                "pattern": pattern,
                "temperature": temperature,
                "rows": len(found),
                f"{metric}_min": spread["min"],
                f"{metric}_median": spread["median"],
                f"{metric}_max": spread["max"],
                "no_bitflip_rows": spread["no_bitflip_rows"],
            }
        )
    return sorted(rows, key=lambda row: (row[axis], str(row["pattern"]), row["temperature"]))


def _merged(records: Sequence[ResultRecord]) -> list[dict[str, Any]]:
    return [{**r.inputs, **r.metrics} for r in records]


@define(frozen=True, slots=True)
class PlotFamily:
    name: str
    experiment: str
    columns: tuple[str, ...]
    rows: Callable[[Sequence[ResultRecord]], list[dict[str, Any]]]


PLOT_FAMILIES: tuple[PlotFamily, ...] = (
    PlotFamily(
        "acmin-vs-taggon",
        "acmin",
        (
            "t_agg_on",
            "pattern",
            "temperature",
            "rows",
            "acmin_min",
            "acmin_median",
            "acmin_max",
            "no_bitflip_rows",
        ),
        lambda records: _grouped(records, "t_agg_on", "acmin"),
    ),
    PlotFamily(
        "taggonmin-vs-ac",
        "taggon_min",
        (
            "activations",
            "pattern",
            "temperature",
            "rows",
            "taggon_min_min",
            "taggon_min_median",
            "taggon_min_max",
            "no_bitflip_rows",
        ),
        lambda records: _grouped(records, "activations", "taggon_min"),
    ),
    PlotFamily(
        "ber-onoff",
        "ber",
        ("row", "delta_t_a2a", "on_fraction", "t_agg_on", "t_agg_off", "temperature", "ber", "flips", "activations"),
        _merged,
    ),
    PlotFamily(
        "overlap",
        "overlap",
        (
            "rows",
            "press_on_time",
            "press_cells",
            "hammer_cells",
            "retention_cells",
            "press_hammer",
            "press_retention",
        ),
        _merged,
    ),
    PlotFamily(
        "ecc-hist",
        "ecc",
        ("rows", "t_agg_on", "temperature", *ECC_BINS, "max_per_word", "words"),
        _merged,
    ),
    PlotFamily(
        "attack-bars",
        "attack",
        ("mitigation", "policy", "num_aggr_acts", "num_reads", "bitflips", "rows_with_bitflips"),
        _merged,
    ),
)


def emit_plotdata(records: Iterable[ResultRecord], out_dir: Path) -> dict[str, Path]:
    """Write every family's table to ``out_dir/<family>.csv``.

    Families without matching records still get a header-only file.
    """
    records = list(records)
    written: dict[str, Path] = {}
    for family in PLOT_FAMILIES:
        matching = [r for r in records if r.experiment == family.experiment]
        path = out_dir / f"{family.name}.csv"
        write_table(path, family.name, family.columns, family.rows(matching))
        written[family.name] = path
    return written


# 🔨💾🔚
