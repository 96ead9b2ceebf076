from pathlib import Path

import pytest

from filtral import catalog

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def loop():
    return catalog.loop_algebra(2)


@pytest.fixture(scope="session")
def a2():
    return catalog.a2_algebra(2)


@pytest.fixture(scope="session")
def six():
    return catalog.six_algebra(2)


@pytest.fixture(scope="session")
def three():
    return catalog.three_algebra(2)


@pytest.fixture(scope="session")
def kronecker():
    return catalog.kronecker_loop_algebra(3)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
