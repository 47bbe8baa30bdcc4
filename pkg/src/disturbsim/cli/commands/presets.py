# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Presets command implementation."""

from typing import Any

import click
from provide.foundation import pout
from provide.foundation.cli.decorators import flexible_options

from disturbsim.config.presets import describe_preset, preset_names


@click.command("presets")
@flexible_options
@click.option("--details", is_flag=True, help="Show the keys each preset sets.")
def presets_command(details: bool, **kwargs: Any) -> None:
    """List the named presets usable as the run file's ``preset`` key."""
    names = preset_names()
    pout(f"📋 {len(names)} presets:")
    for name in names:
        pout(f"  • {name}: {describe_preset(name)}" if details else f"  • {name}")
