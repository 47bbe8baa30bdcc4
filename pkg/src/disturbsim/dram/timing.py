#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""DDR4 timing parameters governing legal command scheduling."""

from __future__ import annotations

from attrs import Factory, define, field

from disturbsim.config.defaults import (
    DEFAULT_MAX_POSTPONED_REFS,
    DEFAULT_TCOL,
    DEFAULT_TRAS,
    DEFAULT_TRCD,
    DEFAULT_TREFI,
    DEFAULT_TREFW,
    DEFAULT_TRFC,
    DEFAULT_TRP,
    MAX_POSTPONED_REFS_LIMIT,
    TIMING_PRESETS,
)
from disturbsim.errors import ConfigurationError


@define(frozen=True, slots=True)
class TimingParams:
    """Timing constants in integer nanoseconds.

    ``tCOL`` is the spacing between column commands to one bank and the time a
    read takes to complete after its column command.
    """

    tRAS: int = DEFAULT_TRAS
    tRP: int = DEFAULT_TRP
    tRC: int = field(default=Factory(lambda self: self.tRAS + self.tRP, takes_self=True))
    tRCD: int = DEFAULT_TRCD
    tCOL: int = DEFAULT_TCOL
    tREFI: int = DEFAULT_TREFI
    tREFW: int = DEFAULT_TREFW
    tRFC: int = DEFAULT_TRFC
    max_postponed_refs: int = DEFAULT_MAX_POSTPONED_REFS

    def __attrs_post_init__(self) -> None:
        for name in ("tRAS", "tRP", "tRCD", "tCOL", "tREFI", "tREFW"):
            if getattr(self, name) <= 0:
                raise ConfigurationError(f"timing.{name}", "must be a positive number of nanoseconds")
        if self.tRFC < 0:
            raise ConfigurationError("timing.tRFC", "must be >= 0")
        if self.tRC != self.tRAS + self.tRP:
            raise ConfigurationError("timing.tRC", f"must equal tRAS + tRP = {self.tRAS + self.tRP}")
        if self.tREFW % self.tREFI:
            raise ConfigurationError("timing.tREFW", f"must be an integer multiple of tREFI ({self.tREFI})")
        if not 0 <= self.max_postponed_refs <= MAX_POSTPONED_REFS_LIMIT:
            raise ConfigurationError(
                "timing.max_postponed_refs", f"must be in [0, {MAX_POSTPONED_REFS_LIMIT}]"
            )
        if self.tRFC >= self.tREFI:
            raise ConfigurationError("timing.tRFC", "must be shorter than tREFI")

    @property
    def refresh_slots(self) -> int:
        """REF commands per refresh window."""
        return self.tREFW // self.tREFI

    @classmethod
    def from_preset(cls, name: str, **overrides: int) -> TimingParams:
        """Timing set by name, with individual fields overridden."""
        try:
            values = dict(TIMING_PRESETS[name])
        except KeyError:
            raise ConfigurationError("timing.preset", f"unknown timing preset '{name}'") from None
        values.update(overrides)
        return cls(**values)


# 🔨💾🔚
