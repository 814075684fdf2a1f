import itertools

import numpy as np
import pytest

from mscr import linalg
from mscr.msr_ref import msr_encode, msr_params, msr_reconstruct, msr_repair


@pytest.fixture
def params():
    return msr_params(6, 3)


def test_params(params):
    assert (params.alpha, params.B, params.d) == (2, 6, 4)
    assert len({params.field.power(i, 2) for i in range(1, 7)}) == 6


def test_zero_and_identity(params):
    assert not msr_encode(params, np.zeros(6, dtype=int)).any()
    C = msr_encode(params, [1, 0, 1, 0, 0, 0])
    for i in range(1, 7):
        phi = linalg.vandermonde([params.field.point(i)], 2, params.p)[0]
        assert np.array_equal(C[i - 1], phi)
        row, _ = msr_repair(params, i, [j for j in range(1, 7) if j != i][:4],
                            C[[j - 1 for j in range(1, 7) if j != i][:4]])
        assert np.array_equal(row, phi)


def test_exhaustive_repair_and_reconstruct(params, rng):
    msg = rng.integers(0, params.p, (10, params.B))
    C = msr_encode(params, msg)
    for i in range(1, 7):
        others = [j for j in range(1, 7) if j != i]
        for hs in itertools.combinations(others, params.d):
            row, sent = msr_repair(params, i, hs, C[:, [j - 1 for j in hs]])
            assert np.array_equal(row, C[:, i - 1])
            assert sent == 10 * params.d
    for sub in itertools.combinations(range(1, 7), 3):
        assert np.array_equal(msr_reconstruct(params, sub, C[:, [j - 1 for j in sub]]), msg)


def test_errors(params):
    with pytest.raises(ValueError):
        msr_reconstruct(params, (1, 1, 2), np.zeros((3, 2)))
    with pytest.raises(ValueError):
        msr_encode(params, [1, 2])
    with pytest.raises(ValueError):
        msr_params(4, 3)
