import itertools

import numpy as np
import pytest

from mscr import derive_params
from mscr.pm_core import encode_raw, encode_rows, pack_message
from mscr.systematic import (IntegrityError, decode_systematic, encode_codeword,
                             encode_systematic, systematic_message_matrix)


def test_systematic_matrix_worked(worked):
    params, mm = worked
    got = systematic_message_matrix(params, [[5, 2], [5, 0], [1, 3]])
    assert got.M.tolist() == [[1, 2], [6, 1], [5, 6]]
    assert not systematic_message_matrix(params, np.zeros((3, 2))).M.any()


def test_right_inverse(rng):
    params = derive_params(9, 4, 5, 3)
    mm = pack_message(params, rng.integers(0, params.p, params.B_inner))
    blocks = encode_rows(params, mm, range(1, params.k_inner + 1))
    assert np.array_equal(systematic_message_matrix(params, blocks).M, mm.M)
    assert np.array_equal(encode_rows(params, systematic_message_matrix(params, blocks),
                                      range(1, params.k_inner + 1)), blocks)


def test_systematic_nodes_store_message(worked, rng):
    params, _ = worked
    msg = np.array([5, 2, 5, 0, 1, 3])
    shards = encode_systematic(params, msg)
    assert [s.symbols.tolist() for s in shards[:3]] == [[5, 2], [5, 0], [1, 3]]
    # same codeword as the raw worked example
    assert [s.symbols.tolist() for s in shards] == \
        [s.symbols.tolist() for s in encode_raw(params, pack_message(params, range(1, 7)))]
    assert not any(s.symbols.any() for s in encode_systematic(params, np.zeros(6, dtype=int)))


def test_imaginary_nodes_zero(rng):
    params = derive_params(10, 4, 8, 2)
    msg = rng.integers(0, params.p, (50, params.B))
    C = encode_codeword(params, msg)
    assert C.shape == (50, params.n_inner, params.alpha)
    assert not C[:, : params.delta].any()


def test_shortened_decode_example(rng):
    params = derive_params(10, 4, 8, 2)
    msg = rng.integers(0, params.p, params.B)
    shards = encode_systematic(params, msg)
    picked = [s for s in shards if s.node_index in (5, 7, 8, 9)]
    assert np.array_equal(decode_systematic(params, picked), msg)


@pytest.mark.parametrize("code", [(5, 3, 3, 2), (6, 2, 2, 3), (8, 3, 4, 3), (8, 4, 6, 2)])
def test_roundtrip_all_subsets(code, rng):
    params = derive_params(*code)
    msg = rng.integers(0, params.p, (20, params.B))
    shards = {s.node_index: s.symbols for s in encode_systematic(params, msg)}
    for sub in itertools.combinations(range(1, params.n + 1), params.k):
        assert np.array_equal(decode_systematic(params, {i: shards[i] for i in sub}), msg)


def test_fast_path_checks_parity(worked):
    params, _ = worked
    msg = np.array([1, 2, 3, 4, 5, 6])
    shards = {s.node_index: s.symbols.copy() for s in encode_systematic(params, msg)}
    assert np.array_equal(decode_systematic(params, shards), msg)
    shards[4][0] = (shards[4][0] + 1) % 7
    with pytest.raises(IntegrityError):
        decode_systematic(params, shards)


def test_errors(worked):
    params, _ = worked
    shards = encode_systematic(params, np.arange(6))
    with pytest.raises(ValueError, match="at least k"):
        decode_systematic(params, shards[:2])
    with pytest.raises(ValueError, match="duplicate"):
        decode_systematic(params, [shards[0], shards[0], shards[1]])
    with pytest.raises(ValueError):
        encode_systematic(params, np.arange(5))
    with pytest.raises(ValueError):
        encode_systematic(params, np.array([7, 0, 0, 0, 0, 0]))
