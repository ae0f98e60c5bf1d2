import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gomory_hu import PROFILES, random_space, validate_ultrametric  # noqa: E402


def make(rows, ids):
    return validate_ultrametric([[Fraction(v) for v in row] for row in rows], list(ids))


@pytest.fixture
def s122():
    """d(a,b)=1, d(a,c)=d(b,c)=2."""
    return make([[0, 1, 2], [1, 0, 2], [2, 2, 0]], "abc")


@pytest.fixture
def equilateral():
    return make([[0, 1, 1], [1, 0, 1], [1, 1, 0]], "abc")


@pytest.fixture
def two_point():
    return make([[0, 5], [5, 0]], "ab")


@pytest.fixture
def one_point():
    return make([[0]], "a")


@pytest.fixture
def two_pairs():
    """d(a,b)=d(c,d)=1, all cross distances 2."""
    return make([[0, 1, 2, 2], [1, 0, 2, 2], [2, 2, 0, 1], [2, 2, 1, 0]], "abcd")


def corpus(count=1200, n_max=8):
    return [random_space(1 + i % n_max, i, PROFILES[(i // n_max) % len(PROFILES)]) for i in range(count)]


_REPORT_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance_report(request):
    lines = request.config.stash.setdefault(_REPORT_KEY, [])
    return lines.append


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_REPORT_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
