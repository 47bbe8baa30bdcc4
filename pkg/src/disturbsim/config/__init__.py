#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Configuration management for disturbsim runs."""

from __future__ import annotations

from disturbsim.config.runtime import DisturbSimConfig, get_config, set_config

#
# disturbsim/config/__init__.py
#

__all__ = ["DisturbSimConfig", "get_config", "set_config"]

# 🔨💾🔚
