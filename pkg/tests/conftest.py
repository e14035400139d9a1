from __future__ import annotations

import warnings

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _quiet_incompatible_warnings():
    # Zero modules for incompatible types warn; tests that care catch it explicitly.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        yield


def pytest_terminal_summary(terminalreporter):
    from tests.acceptance_log import summary_lines

    lines = summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
