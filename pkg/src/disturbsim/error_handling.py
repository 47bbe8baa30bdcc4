#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Centralized error handling and reporting for disturbsim."""

from provide.foundation import logger, perr, pout

from disturbsim.errors import IllegalCommandError, exit_code_for, handle_error


class ErrorReporter:
    """Centralized error reporting for CLI operations."""

    @staticmethod
    def report_hard_fault(error: IllegalCommandError) -> None:
        """Report a simulator hard fault."""
        perr("💥 Hard fault in simulation")
        perr(error.to_user_message())

    @staticmethod
    def report_warnings(component: str, warnings: list[str]) -> None:
        """Report warnings collected during a run."""
        if not warnings:
            return
        pout(f"⚠️  {len(warnings)} warning(s) from {component}")
        for warning in warnings:
            pout(f"  ⚠️  {warning}")

    @staticmethod
    def report(error: Exception) -> int:
        """Print an error for the user and return the matching exit code."""
        if isinstance(error, IllegalCommandError):
            ErrorReporter.report_hard_fault(error)
            logger.error("Hard fault", **error.to_dict())
        else:
            perr(f"❌ {handle_error(error, logger)}")
        return exit_code_for(error)


# 🔨💾🔚
