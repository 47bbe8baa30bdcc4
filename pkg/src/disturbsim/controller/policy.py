#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Row-buffer policies."""

from __future__ import annotations

from attrs import define

from disturbsim.dram.timing import TimingParams
from disturbsim.errors import ConfigurationError
from disturbsim.types import RowPolicyKind


@define(frozen=True, slots=True)
class RowPolicy:
    """Open-page, closed-page, or open-page with a row-open cap ``t_mro``.

    Under the capped policy a row opened at ``t`` is precharged at exactly
    ``t + t_mro`` even with hits still queued. ``capped(tRAS)`` keeps every
    row open for the minimum legal time.
    """

    kind: RowPolicyKind = RowPolicyKind.OPEN_PAGE
    t_mro: int | None = None

    def __attrs_post_init__(self) -> None:
        if self.kind is RowPolicyKind.CAPPED_OPEN and self.t_mro is None:
            raise ConfigurationError("controller.t_mro_ns", "capped row policy requires t_mro_ns")

    @classmethod
    def open_page(cls) -> RowPolicy:
        return cls(RowPolicyKind.OPEN_PAGE)

    @classmethod
    def closed_page(cls) -> RowPolicy:
        return cls(RowPolicyKind.CLOSED_PAGE)

    @classmethod
    def capped_open(cls, t_mro: int) -> RowPolicy:
        return cls(RowPolicyKind.CAPPED_OPEN, t_mro)

    @property
    def is_capped(self) -> bool:
        return self.kind is RowPolicyKind.CAPPED_OPEN

    def check(self, timing: TimingParams) -> None:
        if self.t_mro is not None and self.t_mro < timing.tRAS:
            raise ConfigurationError(
                "controller.t_mro_ns", f"t_mro {self.t_mro} ns is below tRAS ({timing.tRAS} ns)"
            )

    def close_deadline(self, opened_at: int) -> int | None:
        return opened_at + self.t_mro if self.is_capped and self.t_mro is not None else None

    def describe(self) -> str:
        return f"capped({self.t_mro})" if self.is_capped else self.kind.value


# 🔨💾🔚
