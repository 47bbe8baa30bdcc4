#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Tests for result records, flat tables and plot-ready tables."""

from pathlib import Path

import numpy as np
import pytest

from disturbsim.errors import FileSystemError
from disturbsim.results import (
    PLOT_FAMILIES,
    ResultRecord,
    emit_plotdata,
    flatten_record,
    read_results,
    read_table,
    schema_header,
    table_header,
    write_records_table,
    write_results,
    write_table,
)
from disturbsim.types import PatternKind


def _acmin(row: int, t_agg_on: int, acmin: int | None) -> ResultRecord:
    return ResultRecord(
        "acmin",
        {"row": row, "t_agg_on": t_agg_on, "pattern": PatternKind.SINGLE_SIDED, "temperature": 50.0},
        {"acmin": acmin},
    )


class TestResultRecord:
    """Plain-data conversion of inputs and metrics."""

    def test_values_are_plain(self) -> None:
        """Enums, tuples and numpy scalars become JSON values."""
        record = ResultRecord("x", {"pattern": PatternKind.ONOFF, "rows": (1, 2)}, {"n": np.int64(3)})
        assert record.inputs == {"pattern": "onoff", "rows": [1, 2]}
        assert record.metrics["n"] == 3
        assert type(record.metrics["n"]) is int

    def test_json_is_canonical(self) -> None:
        """Keys are sorted and separators compact."""
        record = ResultRecord("x", {"b": 1, "a": 2})
        assert record.to_json() == '{"experiment":"x","inputs":{"a":2,"b":1},"metrics":{}}'

    def test_wall_clock_is_optional(self) -> None:
        assert "wall_clock_s" not in ResultRecord("x").to_dict()
        assert ResultRecord("x", wall_clock_s=0.1234567).to_dict()["wall_clock_s"] == 0.123457


class TestResultFiles:
    """JSON-lines files with a schema header."""

    def test_write_then_read(self, temp_directory: Path) -> None:
        path = temp_directory / "run.results.jsonl"
        records = [_acmin(1, 36, 1000), _acmin(2, 36, None)]
        assert write_results(path, records) == 2
        assert path.read_text().splitlines()[0] == schema_header()
        assert read_results(path) == records

    def test_append_keeps_one_header(self, temp_directory: Path) -> None:
        path = temp_directory / "run.results.jsonl"
        write_results(path, [_acmin(1, 36, 1000)])
        write_results(path, [_acmin(2, 36, 1001)])
        lines = path.read_text().splitlines()
        assert len(lines) == 3
        assert sum(line == schema_header() for line in lines) == 1

    def test_foreign_file_is_rejected(self, temp_directory: Path) -> None:
        """Appending to a file without our header fails instead of corrupting it."""
        path = temp_directory / "other.jsonl"
        path.write_text('{"hello": 1}\n')
        with pytest.raises(FileSystemError):
            write_results(path, [_acmin(1, 36, 1000)])
        with pytest.raises(FileSystemError):
            read_results(path)

    def test_bad_line_names_its_number(self, temp_directory: Path) -> None:
        path = temp_directory / "run.results.jsonl"
        write_results(path, [_acmin(1, 36, 1000)])
        with path.open("a") as handle:
            handle.write("{not json\n")
        with pytest.raises(FileSystemError) as exc_info:
            read_results(path)
        assert "line 3" in str(exc_info.value)


class TestTables:
    """CSV tables with a schema comment line."""

    def test_header_and_cells(self, temp_directory: Path) -> None:
        """None is empty, booleans are lowercase and floats keep full precision."""
        path = temp_directory / "t.csv"
        write_table(path, "demo", ["a", "b", "c"], [{"a": None, "b": True, "c": 0.1}])
        header, rows = read_table(path)
        assert header == table_header("demo")
        assert rows == [{"a": "", "b": "true", "c": "0.1"}]

    def test_missing_header(self, temp_directory: Path) -> None:
        path = temp_directory / "t.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(FileSystemError):
            read_table(path)

    def test_flatten_drops_nested_values(self) -> None:
        record = ResultRecord("ecc", {"rows": 3}, {"words": 2, "directions": {"press": {}}})
        assert flatten_record(record) == {"experiment": "ecc", "in.rows": 3, "out.words": 2}

    def test_records_table_union_of_columns(self, temp_directory: Path) -> None:
        """Columns are the union of all records' keys; absent cells stay empty."""
        path = temp_directory / "records.csv"
        records = [ResultRecord("a", {"x": 1}), ResultRecord("b", {"y": 2})]
        assert write_records_table(path, records) == 2
        _, rows = read_table(path)
        assert list(rows[0]) == ["experiment", "in.x", "in.y"]
        assert rows[0]["in.y"] == ""


class TestPlotData:
    """One table per figure family."""

    def test_every_family_written(self, temp_directory: Path) -> None:
        """Families without records still get a header-only file."""
        written = emit_plotdata([], temp_directory)
        assert set(written) == {family.name for family in PLOT_FAMILIES}
        for family in PLOT_FAMILIES:
            header, rows = read_table(written[family.name])
            assert header == table_header(family.name)
            assert rows == []

    def test_acmin_groups_rows(self, temp_directory: Path) -> None:
        """AC_min is summarized over rows per on-time, counting rows without a flip."""
        records = [_acmin(1, 36, 1000), _acmin(2, 36, 1010), _acmin(3, 36, None), _acmin(1, 7800, 48)]
        path = emit_plotdata(records, temp_directory)["acmin-vs-taggon"]
        _, rows = read_table(path)
        assert [row["t_agg_on"] for row in rows] == ["36", "7800"]
        first = rows[0]
        assert (first["rows"], first["acmin_min"], first["acmin_max"]) == ("3", "1000", "1010")
        assert first["acmin_median"] == "1005.0"
        assert first["no_bitflip_rows"] == "1"

    def test_no_flip_anywhere(self, temp_directory: Path) -> None:
        path = emit_plotdata([_acmin(1, 36, None)], temp_directory)["acmin-vs-taggon"]
        _, rows = read_table(path)
        assert rows[0]["acmin_min"] == ""
        assert rows[0]["no_bitflip_rows"] == "1"

    def test_attack_bars(self, temp_directory: Path) -> None:
        record = ResultRecord(
            "attack",
            {"mitigation": "trr", "policy": "open", "num_aggr_acts": 2, "num_reads": 32},
            {"bitflips": 5, "rows_with_bitflips": 1, "served": 100},
        )
        path = emit_plotdata([record], temp_directory)["attack-bars"]
        _, rows = read_table(path)
        assert rows == [
            {
                "mitigation": "trr",
                "policy": "open",
                "num_aggr_acts": "2",
                "num_reads": "32",
                "bitflips": "5",
                "rows_with_bitflips": "1",
            }
        ]


# 🔨💾🔚
