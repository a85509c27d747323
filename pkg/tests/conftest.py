import math

import pytest
from hypothesis import HealthCheck, settings

from abmomentum.model import SlitConfig
from abmomentum.spectral import Grid

settings.register_profile(
    "default", max_examples=25, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES = []


@pytest.fixture
def grid():
    return Grid.centered()


@pytest.fixture
def fig2():
    return SlitConfig(1.0, 4.0, math.pi / 2)


@pytest.fixture
def fig2_ref():
    return SlitConfig(1.0, 4.0, 0.0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
