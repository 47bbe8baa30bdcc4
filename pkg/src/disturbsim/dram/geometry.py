#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""DRAM address geometry and logical-to-physical row remapping."""

from __future__ import annotations

from attrs import define, field

from disturbsim.config.defaults import (
    DEFAULT_BANKGROUPS,
    DEFAULT_BANKS_PER_GROUP,
    DEFAULT_CHANNELS,
    DEFAULT_COLUMNS,
    DEFAULT_RANKS,
    DEFAULT_ROW_XOR_MASK,
    DEFAULT_ROWS,
)
from disturbsim.errors import ConfigurationError, GeometryError


@define(frozen=True, slots=True, order=True)
class DramAddress:
    """A DRAM location. Row granularity for ACT/PRE, column for RD/WR, rank for REF."""

    channel: int = 0
    rank: int = 0
    bankgroup: int = 0
    bank: int = 0
    row: int = 0
    column: int = 0

    def bank_key(self) -> tuple[int, int, int, int]:
        return (self.channel, self.rank, self.bankgroup, self.bank)

    def with_row(self, row: int, column: int = 0) -> DramAddress:
        return DramAddress(self.channel, self.rank, self.bankgroup, self.bank, row, column)


def _positive(instance: object, attribute: object, value: int) -> None:
    if value < 1:
        raise ConfigurationError(f"geometry.{attribute.name}", f"must be >= 1, got {value}")  # type: ignore[attr-defined]


@define(frozen=True, slots=True)
class Geometry:
    """Device organization. Flat bank indices run channel-major."""

    channels: int = field(default=DEFAULT_CHANNELS, validator=_positive)
    ranks: int = field(default=DEFAULT_RANKS, validator=_positive)
    bankgroups: int = field(default=DEFAULT_BANKGROUPS, validator=_positive)
    banks: int = field(default=DEFAULT_BANKS_PER_GROUP, validator=_positive)
    rows: int = field(default=DEFAULT_ROWS, validator=_positive)
    columns: int = field(default=DEFAULT_COLUMNS, validator=_positive)
    row_xor_mask: int = DEFAULT_ROW_XOR_MASK

    def __attrs_post_init__(self) -> None:
        if not 0 <= self.row_xor_mask < self.rows:
            raise ConfigurationError("geometry.row_xor_mask", f"must be in [0, {self.rows})")
        if self.row_xor_mask and self.rows & (self.rows - 1):
            raise ConfigurationError("geometry.row_xor_mask", "row remapping requires a power-of-two row count")

    @property
    def banks_per_rank(self) -> int:
        return self.bankgroups * self.banks

    @property
    def total_banks(self) -> int:
        return self.channels * self.ranks * self.banks_per_rank

    def check(self, address: DramAddress) -> None:
        """Raise GeometryError if any index is outside the configured dimensions."""
        for name, value, limit in (
            ("channel", address.channel, self.channels),
            ("rank", address.rank, self.ranks),
            ("bankgroup", address.bankgroup, self.bankgroups),
            ("bank", address.bank, self.banks),
            ("row", address.row, self.rows),
            ("column", address.column, self.columns),
        ):
            if not 0 <= value < limit:
                raise GeometryError(name, value, limit)

    def flat_bank(self, address: DramAddress) -> int:
        return (
            (address.channel * self.ranks + address.rank) * self.bankgroups + address.bankgroup
        ) * self.banks + address.bank

    def flat_rank(self, address: DramAddress) -> int:
        return address.channel * self.ranks + address.rank

    def rank_of_bank(self, flat_bank: int) -> int:
        return flat_bank // self.banks_per_rank

    def banks_of_rank(self, flat_rank: int) -> range:
        start = flat_rank * self.banks_per_rank
        return range(start, start + self.banks_per_rank)

    def bank_address(self, flat_bank: int, row: int = 0, column: int = 0) -> DramAddress:
        """Inverse of flat_bank."""
        bank = flat_bank % self.banks
        rest = flat_bank // self.banks
        bankgroup = rest % self.bankgroups
        rest //= self.bankgroups
        return DramAddress(rest // self.ranks, rest % self.ranks, bankgroup, bank, row, column)

    def physical_row(self, row: int) -> int:
        """Logical to physical row. Adjacency is defined on physical rows."""
        return row ^ self.row_xor_mask

    def logical_row(self, physical: int) -> int:
        return physical ^ self.row_xor_mask

    def neighbors(self, physical_row: int, distance: int) -> list[int]:
        """Physical rows at exactly ``distance`` on either side, clipped to the bank."""
        return [r for r in (physical_row - distance, physical_row + distance) if 0 <= r < self.rows]


# 🔨💾🔚
