#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Decorators logging how long a simulation or search step took and what it produced."""

from __future__ import annotations

from collections.abc import Callable, Mapping
import functools
import time
from typing import Any, TypeVar

from provide.foundation import logger

F = TypeVar("F", bound=Callable[..., Any])

OUTCOME_FIELDS = (
    "bitflips",
    "rows_with_bitflips",
    "preventive_refreshes",
    "points",
    "points_with_bitflips",
    "no_bitflip_cells",
)


def outcome_fields(result: Any) -> dict[str, Any]:
    """Counts worth a log line from what a step returned.

    Understands search answers (``int | None``), simulation reports, run
    outcomes and the ``(outcome, path)`` pair a sweep returns; anything
    else contributes nothing.
    """
    if isinstance(result, tuple):
        result = result[0] if result else None
    if result is None or isinstance(result, int):
        return {"found": result is not None, "value": result}
    summary = getattr(result, "summary", None)
    if callable(summary):
        summary = summary()
    if not isinstance(summary, Mapping):
        return {}
    fields = {key: summary[key] for key in OUTCOME_FIELDS if key in summary}
    commands = summary.get("commands")
    if isinstance(commands, Mapping):
        fields["acts"] = commands.get("ACT", 0)
    records = getattr(result, "records", None)
    if records is not None:
        fields["records"] = len(records)
    return fields


def _observed(operation: str, level: str) -> Callable[[F], F]:
    def decorator(func: F) -> F:
        @functools.wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            start = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                logger.error(
                    f"{operation} failed",
                    operation=operation,
                    status="error",
                    error=type(e).__name__,
                    duration_seconds=time.perf_counter() - start,
                )
                raise
            getattr(logger, level)(
                f"{operation} done",
                operation=operation,
                status="success",
                duration_seconds=time.perf_counter() - start,
                **outcome_fields(result),
            )
            return result

        return wrapper  # type: ignore[return-value]

    return decorator


def with_metrics(operation_name: str) -> Callable[[F], F]:
    """Log an entry point's duration and outcome counts at info level."""
    return _observed(operation_name, "info")


def with_timing(func: F) -> F:
    """Same as ``with_metrics`` at debug level, named after the wrapped function."""
    return _observed(f"{func.__module__}.{func.__name__}", "debug")(func)


# 🔨💾🔚
