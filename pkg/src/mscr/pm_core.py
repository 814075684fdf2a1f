"""Product-matrix core: generator, message matrix and raw encoding.

Node ``i`` of the inner code stores ``c_i = psi_i @ M`` where ``psi_i`` is
row ``i`` of a Vandermonde generator and ``M`` overlays two symmetric
matrices::

    M = [S; 0_mu] + [0_mu; T]

so that rows ``mu+1..alpha`` hold ``S`` and ``T`` rows added together.
All node indices here are inner, 1-based.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import DTYPE


@dataclass(frozen=True)
class MessageMatrix:
    S: np.ndarray
    T: np.ndarray
    M: np.ndarray


@dataclass
class Shard:
    node_index: int
    symbols: np.ndarray  # (stripes, alpha) or (alpha,)
    params_digest: tuple

    @property
    def stripes(self):
        return 1 if self.symbols.ndim == 1 else self.symbols.shape[0]


def build_generator(params):
    """The ``n_inner x d_inner`` Vandermonde encoding matrix."""
    return linalg.vandermonde(params.field.points, params.d_inner, params.p)


def build_repair_vector(params, i):
    """``phi_i = (1, a_i, ..., a_i**(alpha-1))`` for inner node ``i``."""
    if not 1 <= i <= params.n_inner:
        raise IndexError(f"node {i} outside 1..{params.n_inner}")
    return linalg.vandermonde([params.field.point(i)], params.alpha, params.p)[0]


def interweave(S, T, mu):
    """Stack ``S`` over ``T`` with the last rows of ``S`` overlapping ``T``'s first."""
    alpha = S.shape[-1]
    M = np.zeros(S.shape[:-2] + (alpha + mu, alpha), dtype=DTYPE)
    M[..., :alpha, :] += S
    M[..., mu:, :] += T
    return M


def message_from_symmetric(params, S, T):
    p = params.p
    S = np.asarray(S, dtype=DTYPE) % p
    T = np.asarray(T, dtype=DTYPE) % p
    return MessageMatrix(S, T, interweave(S, T, params.mu) % p)


def pack_message(params, symbols):
    """Build the message matrix from ``k_inner * alpha`` symbols.

    The first half fills ``S`` (upper triangle, row-major), the second ``T``.
    ``symbols`` may carry leading batch dimensions.
    """
    symbols = np.asarray(symbols, dtype=DTYPE)
    half = linalg.sym_size(params.alpha)
    if symbols.shape[-1] != 2 * half:
        raise ValueError(f"expected {2 * half} message symbols, got {symbols.shape[-1]}")
    S = linalg.symmetric_pack(symbols[..., :half], params.alpha)
    T = linalg.symmetric_pack(symbols[..., half:], params.alpha)
    return message_from_symmetric(params, S, T)


def unpack_message(mm):
    return np.concatenate([linalg.symmetric_unpack(mm.S), linalg.symmetric_unpack(mm.T)], axis=-1)


def encode_rows(params, mm, rows=None):
    """Codeword rows ``G[rows] @ M`` as an array ``(..., len(rows), alpha)``."""
    G = build_generator(params)
    if rows is not None:
        G = G[[i - 1 for i in rows]]
    return linalg.matmul(G, mm.M, params.p)


def encode_raw(params, mm):
    """Non-systematic encoding: one shard per inner node."""
    C = encode_rows(params, mm)
    digest = params.digest()
    return [Shard(i + 1, C[..., i, :], digest) for i in range(params.n_inner)]
