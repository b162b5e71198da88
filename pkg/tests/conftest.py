"""Shared fixtures plus the acceptance-report summary hook.

Acceptance tests append one verdict line each to ACCEPTANCE_LINES; the
terminal-summary hook prints them after the run so the per-criterion
pass/fail report survives pytest's output capturing.
"""

import numpy as np
import pytest

from honeyx.games import MatrixGame

ACCEPTANCE_LINES = []


@pytest.fixture
def pennies():
    """Matching pennies: value 0, both security policies (1/2, 1/2)."""
    return MatrixGame(np.array([[1.0, -1.0], [-1.0, 1.0]]))


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
