#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Result files: JSON-lines records, flat tables and plot-ready tables."""

from __future__ import annotations

from disturbsim.results.plotdata import PLOT_FAMILIES, PlotFamily, emit_plotdata
from disturbsim.results.records import ResultRecord, read_results, schema_header, write_results
from disturbsim.results.tables import (
    flatten_record,
    read_table,
    table_header,
    write_records_table,
    write_table,
)

__all__ = [
    "PLOT_FAMILIES",
    "PlotFamily",
    "ResultRecord",
    "emit_plotdata",
    "flatten_record",
    "read_results",
    "read_table",
    "schema_header",
    "table_header",
    "write_records_table",
    "write_results",
    "write_table",
]

# 🔨💾🔚
