import functools

import pytest

from mstci.canon import generate_connected

_ACCEPTANCE: list[str] = []


@functools.lru_cache(maxsize=None)
def corpus(n):
    return tuple(generate_connected(n))


@pytest.fixture(scope="session")
def connected_graphs():
    return corpus


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
