import pytest

from moebius_optics.response import ResponseParams
from moebius_optics.ring_model import MoebiusRing, ground_state

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def ring():
    return MoebiusRing()


@pytest.fixture(scope="session")
def params():
    return ResponseParams()


@pytest.fixture(scope="session")
def two_term():
    return ResponseParams(approximation="two_term")


@pytest.fixture(scope="session")
def filled(ring):
    return ground_state(ring)


@pytest.fixture
def accept():
    """Record one acceptance criterion line and assert it."""

    def check(number, label, passed, detail=""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {label}  {detail}".rstrip())
        assert passed, f"criterion {number} failed: {label} {detail}"

    return check


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
