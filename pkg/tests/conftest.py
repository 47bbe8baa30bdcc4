#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Centralized test configuration and fixtures using provide-testkit."""

import contextlib
from pathlib import Path
import sys

# On Windows, prevent UnicodeEncodeError from emoji in provide.foundation's
# structured logger by reconfiguring the real streams to UTF-8.
if sys.platform == "win32":
    for _real in (sys.__stdout__, sys.__stderr__, sys.stdout, sys.stderr):
        if _real is None:
            continue
        if hasattr(_real, "reconfigure"):
            with contextlib.suppress(Exception):
                _real.reconfigure(encoding="utf-8", errors="replace")  # type: ignore[union-attr]

from provide.testkit.mocking import Mock
import pytest

try:
    from provide.testkit import mock_logger, reset_foundation_setup_for_testing

    TESTKIT_AVAILABLE = True
except ImportError:
    TESTKIT_AVAILABLE = False

    def reset_foundation_setup_for_testing() -> None:
        pass

    def mock_logger():
        return Mock()


try:
    from provide.testkit.file import temp_directory
except ImportError:

    @pytest.fixture
    def temp_directory(tmp_path):
        return tmp_path


from disturbsim.config import set_config
from disturbsim.controller.requests import AddressMapping, MemoryRequest
from disturbsim.disturbance.cells import CellConfig
from disturbsim.disturbance.model import default_model, published_model
from disturbsim.dram.geometry import Geometry
from disturbsim.dram.timing import TimingParams
from disturbsim.types import RequestKind


def pytest_configure(config) -> None:
    """Register custom marks."""
    config.addinivalue_line("markers", "integration: marks tests as integration tests")


@pytest.fixture(autouse=True)
def foundation_test_setup():
    """
    Reset foundation state before and after each test.

    This ensures proper test isolation for foundation components
    like logging and the runtime configuration.
    """
    reset_foundation_setup_for_testing()
    set_config(None)
    yield
    set_config(None)
    reset_foundation_setup_for_testing()


@pytest.fixture
def timing() -> TimingParams:
    return TimingParams()


@pytest.fixture
def geometry() -> Geometry:
    return Geometry()


@pytest.fixture
def small_geometry() -> Geometry:
    """One bank group of two banks with short rows; fast to sample."""
    return Geometry(bankgroups=1, banks=2, rows=1024, columns=128)


@pytest.fixture
def model():
    return default_model()


@pytest.fixture
def published():
    """Source characterization reproducing the published T'_RH table, distance-1 coupling only."""
    return published_model(distance_coupling=(1.0, 0.0, 0.0))


@pytest.fixture
def cells() -> CellConfig:
    return CellConfig()


@pytest.fixture
def mapping() -> AddressMapping:
    return AddressMapping()


@pytest.fixture
def make_request(geometry: Geometry):
    """Factory for requests to bank 0 of the default geometry."""

    def _make(time: int, row: int, column: int = 0, kind: RequestKind = RequestKind.READ, bank: int = 0, tag: int = 0):
        return MemoryRequest(time, kind, geometry.bank_address(bank, row, column), tag)

    return _make


@pytest.fixture
def run_file(temp_directory: Path):
    """Write a TOML run file and return its path."""

    def _write(text: str = "seed = 7\n", name: str = "run.toml") -> Path:
        path = temp_directory / name
        path.write_text(text)
        return path

    return _write


__all__ = [
    "TESTKIT_AVAILABLE",
    "foundation_test_setup",
    "mock_logger",
    "temp_directory",
]

# 🔨💾🔚
