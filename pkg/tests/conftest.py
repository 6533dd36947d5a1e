"""Shared fixtures for the test suite."""

import logging

import pytest

from revolving_fractals.config.settings import Settings
from revolving_fractals.core.angle_group import build_group, make_generator_set
from revolving_fractals.core.presets import get_preset


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running acceptance-style checks")


@pytest.fixture
def settings(tmp_path):
    """Settings with a small enumeration cap and a temporary output directory."""
    return Settings(
        enumeration_cap=2_000_000,
        output_directory=str(tmp_path / "output"),
        log_level="WARNING",
    )


@pytest.fixture
def tiny_settings():
    """Settings whose cap refuses almost every enumeration."""
    return Settings(enumeration_cap=10)


@pytest.fixture
def heighway():
    return get_preset("heighway").series_spec().ifs


@pytest.fixture
def twindragon():
    return get_preset("twindragon").series_spec().ifs


@pytest.fixture
def fudgeflake():
    return get_preset("fudgeflake").series_spec().ifs


@pytest.fixture
def quarter_group():
    """Δ for S = {0, π/2}: the fourth roots of unity."""
    return build_group(make_generator_set([(0, 1), (1, 4)]))


@pytest.fixture
def six_group():
    """Δ for S = {0, π, 2π/3}: the sixth roots of unity."""
    return build_group(make_generator_set([(0, 1), (1, 2), (1, 3)]))


@pytest.fixture(autouse=True)
def reset_root_handlers():
    """Restore the root logger after tests that call setup_logging."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
