#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Piecewise log-log dose curves mapping aggressor on-time to per-activation dose."""

from __future__ import annotations

from functools import lru_cache
import math

from attrs import define, field

from disturbsim.config.defaults import DEFAULT_TRAS, REFERENCE_TEMPERATURE_C
from disturbsim.errors import ConfigurationError, ContractViolationError

Anchors = tuple[tuple[float, float], ...]


def _to_pairs(value: object) -> tuple[tuple[float, float], ...]:
    return tuple((float(a), float(b)) for a, b in value)  # type: ignore[attr-defined]


@define(frozen=True, slots=True)
class DoseCurve:
    """Dose per activation as a function of on-time, with a temperature factor.

    Between anchors the curve interpolates linearly in (log on_time, log dose);
    below the first anchor it is constant and past the last anchor it follows
    ``tail_slope`` in log-log space. ``temperature_scale`` holds (°C, factor)
    points interpolated linearly and clamped at the ends.
    """

    anchors: Anchors = field(converter=_to_pairs)
    tail_slope: float = field(default=0.0, converter=float)
    temperature_scale: Anchors = field(default=((REFERENCE_TEMPERATURE_C, 1.0),), converter=_to_pairs)
    name: str = "curve"

    def __attrs_post_init__(self) -> None:
        key = f"model.{self.name}"
        if len(self.anchors) < 2:
            raise ConfigurationError(f"{key}.anchors", "needs at least 2 anchors")
        times = [t for t, _ in self.anchors]
        if any(b <= a for a, b in zip(times, times[1:], strict=False)):
            raise ConfigurationError(f"{key}.anchors", "on-times must be strictly increasing")
        if any(d <= 0 for _, d in self.anchors) or times[0] <= 0:
            raise ConfigurationError(f"{key}.anchors", "on-times and doses must be strictly positive")
        if not self.temperature_scale:
            raise ConfigurationError(f"{key}.temperature_scale", "needs at least one point")
        temps = [t for t, _ in self.temperature_scale]
        if any(b <= a for a, b in zip(temps, temps[1:], strict=False)):
            raise ConfigurationError(f"{key}.temperature_scale", "temperatures must be strictly increasing")
        if any(f <= 0 for _, f in self.temperature_scale):
            raise ConfigurationError(f"{key}.temperature_scale", "factors must be strictly positive")

    def raw(self, on_time: float) -> float:
        """Dose at the reference temperature."""
        return _raw_dose(self.anchors, self.tail_slope, float(on_time))

    def factor(self, temperature: float) -> float:
        points = self.temperature_scale
        if temperature <= points[0][0]:
            return points[0][1]
        for (t0, f0), (t1, f1) in zip(points, points[1:], strict=False):
            if temperature <= t1:
                return f0 + (f1 - f0) * (temperature - t0) / (t1 - t0)
        return points[-1][1]

    def inverse(self, dose: float, temperature: float) -> float:
        """Smallest on-time whose dose reaches ``dose``.

        Returns 0.0 when every on-time qualifies and ``math.inf`` when none does.
        """
        target = dose / self.factor(temperature)
        anchors = self.anchors
        if target <= anchors[0][1]:
            return 0.0
        for (t0, d0), (t1, d1) in zip(anchors, anchors[1:], strict=False):
            if d0 < target <= d1:
                slope = math.log(d1 / d0) / math.log(t1 / t0)
                return t0 * math.exp(math.log(target / d0) / slope)
        t_last, d_last = anchors[-1]
        if self.tail_slope <= 0:
            return math.inf
        return t_last * math.exp(math.log(target / d_last) / self.tail_slope)


@lru_cache(maxsize=65_536)
def _raw_dose(anchors: Anchors, tail_slope: float, on_time: float) -> float:
    if on_time <= anchors[0][0]:
        return anchors[0][1]
    for (t0, d0), (t1, d1) in zip(anchors, anchors[1:], strict=False):
        if on_time == t1:
            return d1
        if on_time < t1:
            w = math.log(on_time / t0) / math.log(t1 / t0)
            return math.exp(math.log(d0) + w * (math.log(d1) - math.log(d0)))
    t_last, d_last = anchors[-1]
    return d_last * (on_time / t_last) ** tail_slope


def dose_of(
    curve: DoseCurve, on_time: float, temperature: float, *, min_on_time: float = DEFAULT_TRAS
) -> float:
    """Per-activation dose at ``on_time`` and ``temperature``.

    Raises:
        ContractViolationError: if ``on_time`` is below the minimum row-open time
    """
    if on_time < min_on_time:
        raise ContractViolationError("dose_of", f"on_time {on_time} ns is below tRAS ({min_on_time} ns)")
    return curve.raw(on_time) * curve.factor(temperature)


# 🔨💾🔚
