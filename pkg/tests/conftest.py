import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from chroma.field import field_create

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def gf4():
    return field_create(2, 2)


@pytest.fixture(scope="session")
def gf5():
    return field_create(5, 1)


@pytest.fixture(scope="session")
def gf8():
    return field_create(2, 3)


@pytest.fixture(scope="session")
def gf9():
    return field_create(3, 2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
