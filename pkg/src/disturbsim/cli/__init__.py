# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""disturbsim CLI module."""

from disturbsim.cli.main import main

__all__ = ["main"]
