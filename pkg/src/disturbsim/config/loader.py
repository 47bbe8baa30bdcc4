#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Reading, overriding and serializing run files.

Run files are TOML or JSON with one table per section. A top-level
``preset`` key merges a named preset underneath the file. Unknown keys are
rejected at every level.
"""

from __future__ import annotations

from collections.abc import Sequence
from enum import Enum
import hashlib
import json
from pathlib import Path
from typing import Any

import attrs
from provide.foundation import logger
from provide.foundation.file.safe import safe_read_text
from provide.foundation.serialization import toml_loads

from disturbsim.config.presets import deep_merge, preset_data
from disturbsim.config.run import (
    AttackSettings,
    ControllerSettings,
    MitigationSettings,
    ModelSettings,
    OutputSettings,
    RunConfig,
    SearchSettings,
)
from disturbsim.controller.requests import AddressMapping
from disturbsim.disturbance.cells import CellConfig
from disturbsim.dram.geometry import Geometry
from disturbsim.dram.timing import TimingParams
from disturbsim.errors import ConfigurationError, FileSystemError
from disturbsim.patterns.spec import PatternSpec

SECTIONS: dict[str, type] = {
    "geometry": Geometry,
    "timing": TimingParams,
    "address_map": AddressMapping,
    "model": ModelSettings,
    "cells": CellConfig,
    "controller": ControllerSettings,
    "mitigation": MitigationSettings,
    "pattern": PatternSpec,
    "attack": AttackSettings,
    "search": SearchSettings,
    "output": OutputSettings,
}
SCALARS = ("seed", "preset")

# File key -> attribute name, where the two differ
KEY_ALIASES: dict[str, dict[str, str]] = {
    "pattern": {"t_agg_on_ns": "t_agg_on", "delta_t_a2a_ns": "delta_t_a2a"},
}


def _build_section(name: str, table: Any) -> Any:
    cls = SECTIONS[name]
    if not isinstance(table, dict):
        raise ConfigurationError(name, "must be a table")
    aliases = KEY_ALIASES.get(name, {})
    allowed = {a.name for a in attrs.fields(cls) if a.init}
    kwargs: dict[str, Any] = {}
    for key, value in table.items():
        attribute = aliases.get(key, key)
        if attribute not in allowed:
            raise ConfigurationError(f"{name}.{key}", "unknown key")
        kwargs[attribute] = value
    try:
        return cls(**kwargs)
    except ConfigurationError:
        raise
    except (TypeError, ValueError) as e:
        raise ConfigurationError(name, str(e)) from e


def _build_timing(table: Any) -> TimingParams:
    if isinstance(table, dict) and "preset" in table:
        rest = {k: v for k, v in table.items() if k != "preset"}
        _build_section("timing", rest)
        return TimingParams.from_preset(str(table["preset"]), **rest)
    result: TimingParams = _build_section("timing", table)
    return result


def config_from_dict(data: dict[str, Any], source: Path | None = None) -> RunConfig:
    """Build and validate a RunConfig from parsed run-file data.

    Raises:
        ConfigurationError: naming the offending key and constraint
    """
    try:
        preset = data.get("preset")
        if preset is not None:
            data = deep_merge(preset_data(str(preset)), data)
        for key in data:
            if key not in SECTIONS and key not in SCALARS:
                raise ConfigurationError(key, "unknown key")
        seed = data.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
            raise ConfigurationError("seed", "must be a non-negative integer")
        sections = {
            name: _build_timing(data.get(name, {})) if name == "timing" else _build_section(name, data.get(name, {}))
            for name in SECTIONS
        }
        config = RunConfig(seed=seed, preset=preset, **sections)
        return config.validate()
    except ConfigurationError as e:
        if source is not None and e.config_file is None:
            raise ConfigurationError(e.config_key, e.reason, source) from e
        raise


def read_config_data(path: Path) -> dict[str, Any]:
    """Parse a TOML or JSON run file into plain data."""
    if not path.is_file():
        raise FileSystemError(path, "read", "file not found")
    text = safe_read_text(path)
    try:
        data = json.loads(text) if path.suffix.lower() == ".json" else toml_loads(text)
    except Exception as e:
        raise ConfigurationError("<file>", f"cannot parse run file: {e}", path) from e
    if not isinstance(data, dict):
        raise ConfigurationError("<file>", "run file must hold a table of sections", path)
    return dict(data)


def parse_override(text: str) -> tuple[list[str], Any]:
    """Split ``a.b=value``; the value is read as a TOML value, else kept as a string."""
    key, sep, raw = text.partition("=")
    if not sep or not key.strip():
        raise ConfigurationError(text, "overrides look like section.key=value")
    try:
        value = toml_loads(f"v = {raw.strip()}")["v"]
    except Exception:
        value = raw.strip()
    return [part.strip() for part in key.split(".")], value


def set_path(data: dict[str, Any], path: Sequence[str], value: Any) -> None:
    """Set ``data[a][b]... = value`` for ``path = [a, b, ...]``, creating tables on the way."""
    target = data
    for part in path[:-1]:
        nested = target.setdefault(part, {})
        if not isinstance(nested, dict):
            raise ConfigurationError(".".join(path), f"'{part}' is not a table")
        target = nested
    target[path[-1]] = value


def apply_overrides(data: dict[str, Any], overrides: Sequence[str]) -> dict[str, Any]:
    """Return a copy of ``data`` with every ``--set`` override applied in order."""
    result = deep_merge({}, data)
    for text in overrides:
        path, value = parse_override(text)
        set_path(result, path, value)
    return result


def load_config(path: Path, overrides: Sequence[str] = ()) -> RunConfig:
    """Load, override and validate a run file."""
    data = apply_overrides(read_config_data(path), overrides)
    config = config_from_dict(data, source=path)
    logger.debug("Run file loaded", path=str(path), preset=config.preset, overrides=len(overrides))
    return config


def _plain(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    return value


def config_to_dict(config: RunConfig) -> dict[str, Any]:
    """Plain data that :func:`config_from_dict` turns back into an equal config."""
    data: dict[str, Any] = {"seed": config.seed}
    if config.preset is not None:
        data["preset"] = config.preset
    for name in SECTIONS:
        section = getattr(config, name)
        reverse = {attr: key for key, attr in KEY_ALIASES.get(name, {}).items()}
        data[name] = {
            reverse.get(a.name, a.name): _plain(getattr(section, a.name)) for a in attrs.fields(type(section)) if a.init
        }
    return data


def serialize_config(config: RunConfig) -> str:
    return json.dumps(config_to_dict(config), sort_keys=True, indent=2) + "\n"


def config_digest(config: RunConfig) -> str:
    return hashlib.sha256(serialize_config(config).encode("utf-8")).hexdigest()


# 🔨💾🔚
