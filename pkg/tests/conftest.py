import pytest

from golombcount.ntcore import primes_in_range

SMALL_PRIMES = primes_in_range(3, 120)


@pytest.fixture(params=[3, 5, 7, 11, 13, 31, 61, 97, 211])
def prime(request):
    return request.param


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
