# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0

"""Options shared by the run commands."""

from collections.abc import Callable
from pathlib import Path
from typing import Any, TypeVar

import click

from disturbsim.config import get_config
from disturbsim.config.run import RunConfig

F = TypeVar("F", bound=Callable[..., Any])


def run_options(func: F) -> F:
    """Config argument plus ``--set``, ``--output-dir`` and ``--append``."""
    func = click.option(
        "--append",
        is_flag=True,
        help="Append to an existing result file instead of replacing it.",
    )(func)
    func = click.option(
        "--output-dir",
        "-o",
        type=click.Path(file_okay=False, path_type=Path),
        help="Directory for result files (default: output.dir, then DISTURBSIM_OUTPUT_DIR).",
    )(func)
    func = click.option(
        "--set",
        "overrides",
        multiple=True,
        metavar="KEY=VALUE",
        help="Override a run-file key, e.g. --set controller.t_mro_ns=96 (repeatable).",
    )(func)
    func = click.argument("config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))(func)
    return func


def resolve_output_dir(config: RunConfig, output_dir: Path | None) -> Path:
    if output_dir is not None:
        return output_dir
    if config.output.dir:
        return Path(config.output.dir)
    return get_config().output_dir
