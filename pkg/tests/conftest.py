import numpy as np
import pytest

from kqlattice.phasespace import PhasePlane

_criteria = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    ok = call.excinfo is None
    prev = _criteria.get(number, (title, True))
    _criteria[number] = (title, prev[1] and ok)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title}")


@pytest.fixture
def plane15():
    return PhasePlane.from_factors(3, 5)


@pytest.fixture
def plane6():
    return PhasePlane.from_factors(2, 3)


@pytest.fixture
def rng():
    return np.random.default_rng(20240615)

