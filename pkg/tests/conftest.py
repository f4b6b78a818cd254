import pytest

from irdress.molecule import find_crossing, qubit_states
from irdress.registry import get_molecule


@pytest.fixture(scope="session")
def srf():
    return get_molecule("SrF")


@pytest.fixture(scope="session")
def b_cross(srf):
    return find_crossing(srf)


@pytest.fixture(scope="session")
def states(srf, b_cross):
    return qubit_states(srf, b_cross)


# -- acceptance report ---------------------------------------------------------------

ACCEPTANCE_LINES = {}


@pytest.fixture
def criterion():
    """Record one pass/fail line for an acceptance criterion.

    Call ``criterion(n, ok, detail)``; the line is printed immediately and
    collected for the terminal summary, then the test asserts ``ok``.
    """

    def record(n, ok, detail):
        line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES[n] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
