import pytest

from repalg.rep_algebra import context


@pytest.fixture(scope="session")
def ctx22():
    return context(2, 2, 3)


@pytest.fixture(scope="session")
def ctx23():
    return context(2, 3, 3)


@pytest.fixture(scope="session")
def ctx33():
    return context(3, 3, 3)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
