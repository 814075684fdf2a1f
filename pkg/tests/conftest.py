import numpy as np
import pytest

from mscr import derive_params, pack_message

GRID = [(5, 3, 3, 2), (7, 4, 5, 2), (8, 4, 6, 2), (8, 3, 4, 3), (9, 4, 5, 3)]


@pytest.fixture
def worked():
    """The (5,3,3,2) code over GF(7) with message (1..6)."""
    params = derive_params(5, 3, 3, 2)
    assert params.p == 7
    return params, pack_message(params, [1, 2, 3, 4, 5, 6])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[_ACCEPTANCE]


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
