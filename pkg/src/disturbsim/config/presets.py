#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Named partial run files merged underneath a run file's own values."""

from __future__ import annotations

import copy
from typing import Any

from disturbsim.config.defaults import MANUFACTURER_PRESS_REDUCTION_80C, PUBLISHED_RP_CONFIGS
from disturbsim.errors import ConfigurationError
from disturbsim.mitigation.rp import graphene_threshold


def _published_preset(t_mro: int) -> dict[str, Any]:
    t_rh_prime, p = PUBLISHED_RP_CONFIGS[t_mro]
    return {
        "model": {"source": "published"},
        "controller": {"row_policy": "capped", "t_mro_ns": t_mro},
        "mitigation": {"kind": "graphene_rp", "graphene_T": graphene_threshold(t_rh_prime), "para_p": p},
    }


PRESETS: dict[str, dict[str, Any]] = {
    **{f"published/t_mro_{t_mro}": _published_preset(t_mro) for t_mro in sorted(PUBLISHED_RP_CONFIGS)},
    # alias names
    **{f"table2/t_mro_{t_mro}": _published_preset(t_mro) for t_mro in sorted(PUBLISHED_RP_CONFIGS)},
    **{name: {"model": {"manufacturer": name}} for name in sorted(MANUFACTURER_PRESS_REDUCTION_80C)},
}


def preset_names() -> list[str]:
    return list(PRESETS)


def preset_data(name: str) -> dict[str, Any]:
    try:
        return copy.deepcopy(PRESETS[name])
    except KeyError:
        raise ConfigurationError("preset", f"unknown preset '{name}'; see 'disturbsim presets'") from None


def describe_preset(name: str) -> str:
    """One-line summary of what a preset sets."""
    data = preset_data(name)
    parts = [f"{section}.{key}={value}" for section, table in data.items() for key, value in table.items()]
    return ", ".join(parts)


def deep_merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    """``override`` on top of ``base``; nested tables merge key by key."""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


# 🔨💾🔚
