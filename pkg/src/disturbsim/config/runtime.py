#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Process-level runtime settings for disturbsim.

These are environment-driven knobs that do not change simulation results
(worker count, default output directory). Everything that does change
results lives in the run file.
"""

from pathlib import Path

from attrs import define
from provide.foundation.config import RuntimeConfig, field

from disturbsim.config.defaults import (
    DEFAULT_OUTPUT_DIR,
    DEFAULT_WORKERS,
    ENV_DISTURBSIM_OUTPUT_DIR,
    ENV_DISTURBSIM_WORKERS,
)


@define
class DisturbSimConfig(RuntimeConfig):
    """Runtime configuration for disturbsim operations."""

    workers: int = field(
        default=DEFAULT_WORKERS,
        description="Number of parallel sweep workers",
        env_var=ENV_DISTURBSIM_WORKERS,
    )
    output_dir: Path = field(  # noqa: RUF009
        factory=lambda: Path(DEFAULT_OUTPUT_DIR),
        description="Default directory for result files",
        env_var=ENV_DISTURBSIM_OUTPUT_DIR,
    )

    def __attrs_post_init__(self) -> None:
        """Normalize derived configuration values."""
        super().__attrs_post_init__()
        if self.workers < 1:
            self.workers = 1


# Global configuration instance
_config: DisturbSimConfig | None = None


def get_config() -> DisturbSimConfig:
    """Get the global configuration instance."""
    global _config
    if _config is None:
        _config = DisturbSimConfig.from_env()
    return _config


def set_config(config: DisturbSimConfig | None) -> None:
    """Set the global configuration instance."""
    global _config
    _config = config


# 🔨💾🔚
