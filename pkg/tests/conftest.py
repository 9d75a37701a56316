import pytest

from primepairs.primes import sieve_upto

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def table_1e6():
    return sieve_upto(10**6)


@pytest.fixture(scope="session")
def table_1e4():
    return sieve_upto(10**4)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
