import pytest

from curvesplit.param import random_points

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def points9():
    return random_points(9, seed=20260810)


@pytest.fixture(scope="session")
def points10():
    return random_points(10, seed=20260810)
