"""Systematic, shortened encoder and decoder (the public codec).

The user's ``k`` blocks go on outer nodes ``1..k`` verbatim. Internally the
inner code has ``k_inner = k + delta`` systematic nodes; the first
``delta`` of them hold zeros and are punctured away before storage.
"""

import numpy as np

from .linalg import DTYPE
from .pm_core import Shard, encode_rows
from .reconstruct import ReconstructionInput, decode_inner, recover_message_matrix


class IntegrityError(ValueError):
    pass


def as_blocks(params, message):
    """View ``(..., B)`` symbols as ``(..., k, alpha)`` blocks."""
    message = np.asarray(message, dtype=DTYPE)
    if message.shape[-1] != params.B:
        raise ValueError(f"message must hold B={params.B} symbols, got {message.shape[-1]}")
    if np.any((message < 0) | (message >= params.p)):
        raise ValueError(f"message symbols must lie in [0, {params.p})")
    return message.reshape(message.shape[:-1] + (params.k, params.alpha))


def systematic_message_matrix(params, blocks):
    """Message matrix whose inner nodes ``1..k_inner`` store ``blocks`` verbatim."""
    blocks = np.asarray(blocks, dtype=DTYPE)
    if blocks.shape[-2:] != (params.k_inner, params.alpha):
        raise ValueError(f"need {params.k_inner} blocks of {params.alpha} symbols")
    return decode_inner(params, list(range(1, params.k_inner + 1)), blocks)


def encode_codeword(params, message):
    """Full inner codeword ``(..., n_inner, alpha)`` for an outer message."""
    blocks = as_blocks(params, message)
    zeros = np.zeros(blocks.shape[:-2] + (params.delta, params.alpha), dtype=DTYPE)
    mm = systematic_message_matrix(params, np.concatenate([zeros, blocks], axis=-2))
    C = encode_rows(params, mm)
    if np.any(C[..., : params.delta, :]):
        raise AssertionError("imaginary nodes must store zeros")
    return C


def encode_systematic(params, message):
    """Encode ``(..., B)`` symbols into ``n`` shards; shard ``j <= k`` holds block ``j``."""
    C = encode_codeword(params, message)[..., params.delta:, :]
    digest = params.digest()
    return [Shard(j + 1, C[..., j, :], digest) for j in range(params.n)]


def _rows_by_index(shards):
    if isinstance(shards, dict):
        return {int(i): np.asarray(r, dtype=DTYPE) for i, r in shards.items()}
    out = {}
    for s in shards:
        if s.node_index in out:
            raise ValueError(f"duplicate shard for node {s.node_index}")
        out[s.node_index] = np.asarray(s.symbols, dtype=DTYPE)
    return out


def decode_systematic(params, shards):
    """Recover the ``(..., B)`` message from at least ``k`` distinct shards.

    ``shards`` is a list of :class:`Shard` or a mapping index -> rows. With
    all systematic shards present the blocks are read directly, and one
    parity shard (if supplied) is re-derived as a consistency check.
    """
    rows = _rows_by_index(shards)
    if len(rows) < params.k:
        raise ValueError(f"need at least k={params.k} shards, got {len(rows)}")
    if any(not 1 <= i <= params.n for i in rows):
        raise ValueError(f"shard indices must lie in 1..{params.n}")
    systematic = list(range(1, params.k + 1))
    if all(i in rows for i in systematic):
        blocks = np.stack([rows[i] for i in systematic], axis=-2)
        message = blocks.reshape(blocks.shape[:-2] + (params.B,))
        parity = sorted(i for i in rows if i > params.k)
        if parity:
            j = parity[0]
            expect = encode_codeword(params, message)[..., params.inner_index(j) - 1, :]
            if not np.array_equal(expect, rows[j]):
                raise IntegrityError(f"parity shard {j} disagrees with the systematic shards")
        return message
    chosen = sorted(rows)[: params.k]
    data = ReconstructionInput(tuple(chosen), np.stack([rows[i] for i in chosen], axis=-2))
    mm = recover_message_matrix(params, data)
    inner = list(range(params.delta + 1, params.k_inner + 1))
    blocks = encode_rows(params, mm, inner)
    return blocks.reshape(blocks.shape[:-2] + (params.B,))
