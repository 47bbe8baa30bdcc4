#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Memory requests, physical address decoding and the text trace format.

Trace lines look like ``<arrival_ns> <R|W> <hex physical address>``. Blank
lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from pathlib import Path

from attrs import define, field

from disturbsim.config.defaults import (
    DEFAULT_BANK_BITS,
    DEFAULT_BANKGROUP_BITS,
    DEFAULT_CHANNEL_BITS,
    DEFAULT_COLUMN_BITS,
    DEFAULT_OFFSET_BITS,
    DEFAULT_RANK_BITS,
    DEFAULT_ROW_BITS,
)
from disturbsim.dram.geometry import DramAddress, Geometry
from disturbsim.errors import ConfigurationError, FileSystemError, TraceParseError
from disturbsim.types import RequestKind


@define(frozen=True, slots=True)
class MemoryRequest:
    arrival_time: int
    kind: RequestKind
    address: DramAddress
    tag: int = 0


def _bits(instance: object, attribute: object, value: int) -> None:
    if value < 0:
        raise ConfigurationError(f"address_map.{attribute.name}", "bit counts must be >= 0")  # type: ignore[attr-defined]


@define(frozen=True, slots=True)
class AddressMapping:
    """Bit slicing of a physical address, least significant field first.

    Layout (LSB to MSB): cache-line offset, column, bank group, bank, rank,
    channel, row. Each field is a plain bit range; the row field is logical
    and goes through the geometry's XOR remap for adjacency.
    """

    offset_bits: int = field(default=DEFAULT_OFFSET_BITS, validator=_bits)
    column_bits: int = field(default=DEFAULT_COLUMN_BITS, validator=_bits)
    bankgroup_bits: int = field(default=DEFAULT_BANKGROUP_BITS, validator=_bits)
    bank_bits: int = field(default=DEFAULT_BANK_BITS, validator=_bits)
    rank_bits: int = field(default=DEFAULT_RANK_BITS, validator=_bits)
    channel_bits: int = field(default=DEFAULT_CHANNEL_BITS, validator=_bits)
    row_bits: int = field(default=DEFAULT_ROW_BITS, validator=_bits)

    def _fields(self) -> tuple[tuple[str, int], ...]:
        return (
            ("column", self.column_bits),
            ("bankgroup", self.bankgroup_bits),
            ("bank", self.bank_bits),
            ("rank", self.rank_bits),
            ("channel", self.channel_bits),
            ("row", self.row_bits),
        )

    def check_fits(self, geometry: Geometry) -> None:
        """Every decoded index must fall inside the geometry."""
        limits = {
            "column": geometry.columns,
            "bankgroup": geometry.bankgroups,
            "bank": geometry.banks,
            "rank": geometry.ranks,
            "channel": geometry.channels,
            "row": geometry.rows,
        }
        for name, bits in self._fields():
            if (1 << bits) > limits[name]:
                raise ConfigurationError(
                    f"address_map.{name}_bits",
                    f"{bits} bits reach past {limits[name]} {name}s",
                )

    def decode(self, physical: int) -> DramAddress:
        value = physical >> self.offset_bits
        parts: dict[str, int] = {}
        for name, bits in self._fields():
            parts[name] = value & ((1 << bits) - 1)
            value >>= bits
        return DramAddress(**parts)

    def encode(self, address: DramAddress) -> int:
        value = 0
        shift = self.offset_bits
        for name, bits in self._fields():
            value |= (getattr(address, name) & ((1 << bits) - 1)) << shift
            shift += bits
        return value


def parse_trace_lines(
    lines: Iterable[str | bytes],
    mapping: AddressMapping,
    geometry: Geometry,
    source: str = "<trace>",
) -> Iterator[MemoryRequest]:
    """Yield requests from trace text.

    Raises:
        TraceParseError: with the 1-based line number of the first bad line
    """
    last_arrival = 0
    tag = 0
    for number, raw in enumerate(lines, start=1):
        if isinstance(raw, bytes):
            try:
                raw = raw.decode("utf-8")
            except UnicodeDecodeError as e:
                raise TraceParseError(source, number, f"not valid UTF-8 at byte {e.start}") from None
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise TraceParseError(source, number, f"expected 3 fields, got {len(parts)}")
        arrival_text, kind_text, address_text = parts
        try:
            arrival = int(arrival_text)
        except ValueError:
            raise TraceParseError(source, number, f"arrival '{arrival_text}' is not an integer") from None
        if arrival < 0:
            raise TraceParseError(source, number, "arrival time must be >= 0")
        if arrival < last_arrival:
            raise TraceParseError(source, number, f"arrival {arrival} precedes previous arrival {last_arrival}")
        try:
            kind = RequestKind(kind_text.upper())
        except ValueError:
            raise TraceParseError(source, number, f"request kind '{kind_text}' is not R or W") from None
        try:
            physical = int(address_text, 16)
        except ValueError:
            raise TraceParseError(source, number, f"address '{address_text}' is not hexadecimal") from None
        address = mapping.decode(physical)
        try:
            geometry.check(address)
        except Exception as e:
            raise TraceParseError(source, number, str(e)) from e
        last_arrival = arrival
        yield MemoryRequest(arrival, kind, address, tag)
        tag += 1


def parse_trace(path: Path, mapping: AddressMapping, geometry: Geometry) -> list[MemoryRequest]:
    try:
        with path.open("rb") as handle:
            return list(parse_trace_lines(handle, mapping, geometry, str(path)))
    except OSError as e:
        raise FileSystemError(path, "read trace", str(e), caused_by=e) from e


def format_trace_line(request: MemoryRequest, mapping: AddressMapping) -> str:
    return f"{request.arrival_time} {request.kind.value} {mapping.encode(request.address):#x}"


def write_trace(path: Path, requests: Iterable[MemoryRequest], mapping: AddressMapping) -> int:
    """Write requests in the trace format and return how many were written."""
    count = 0
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as handle:
            for request in requests:
                handle.write(format_trace_line(request, mapping) + "\n")
                count += 1
    except OSError as e:
        raise FileSystemError(path, "write trace", str(e), caused_by=e) from e
    return count


# 🔨💾🔚
