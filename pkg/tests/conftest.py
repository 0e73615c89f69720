import pytest

from acceptance_log import LINES
from divbounds.harness import corpus
from divbounds.simplex import pair, validate

CORPUS = dict(seed=42, trials=10_000, dims=(2, 50), floor=1e-6)


def pytest_terminal_summary(terminalreporter):
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def half_quarter():
    """P = (1/2, 1/2), Q = (1/4, 3/4)."""
    return pair(validate([0.5, 0.5]), validate([0.25, 0.75]))


@pytest.fixture(scope="session")
def equal_pair():
    p = validate([0.2, 0.3, 0.5])
    return pair(p, p)


@pytest.fixture(scope="session")
def trials():
    """The default fuzz corpus: 10^4 pairs, dimensions 2 to 50, seed 42."""
    return list(corpus(**CORPUS))
