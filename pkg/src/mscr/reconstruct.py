"""Data reconstruction from any k nodes.

The workhorse is :func:`decode_pair`, which recovers two symmetric matrices
``S`` and ``T`` from ``X = Phi S + diag(lam) Phi T``. The same routine
serves the MSCR codes, the MSR reference code and the systematic encoder.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import DTYPE
from .pm_core import build_generator, message_from_symmetric, unpack_message


@dataclass(frozen=True)
class ReconstructionInput:
    node_indices: tuple
    rows: np.ndarray  # (..., k, alpha)

    def __post_init__(self):
        idx = tuple(int(i) for i in self.node_indices)
        if len(set(idx)) != len(idx):
            raise ValueError(f"duplicate node indices in {idx}")
        object.__setattr__(self, "node_indices", idx)
        object.__setattr__(self, "rows", np.asarray(self.rows, dtype=DTYPE))
        if self.rows.shape[-2] != len(idx):
            raise ValueError("one row per node index required")


def _off_diagonal_split(Y, lam, p):
    """Split the off-diagonal part of ``Y = A + diag(lam) B`` into ``A`` and ``B``.

    Entries (i, j) and (j, i) give ``a + lam_i b`` and ``a + lam_j b`` with
    the same unknowns, so each pair is a 2x2 system with determinant
    ``lam_i - lam_j``. Diagonals are left at zero; they are never needed.
    """
    m = len(lam)
    lam = np.asarray(lam, dtype=DTYPE) % p
    diff = (lam[:, None] - lam[None, :]) % p
    off = ~np.eye(m, dtype=bool)
    if np.any(diff[off] == 0):
        raise ValueError("lambda values must be pairwise distinct")
    inv_diff = np.zeros((m, m), dtype=DTYPE)
    for i, j in zip(*np.nonzero(off)):
        inv_diff[i, j] = pow(int(diff[i, j]), p - 2, p)
    Yt = np.swapaxes(Y, -1, -2)
    B = (Y - Yt) % p * inv_diff % p
    A = (Y - lam[:, None] * B) % p
    A[..., ~off] = 0
    B[..., ~off] = 0
    return A, B


def _symmetric_from_gram(A, Phi, p):
    """Recover symmetric ``S`` from the off-diagonal entries of ``Phi S Phi^T``.

    Row ``i`` of ``Phi S`` is solved from ``a_ij`` (j != i) through the
    square Vandermonde of the other rows of ``Phi``; ``S`` then follows from
    the first ``k-1`` rows of ``Phi S``.
    """
    m, w = Phi.shape
    rows = []
    for i in range(w):
        others = [j for j in range(m) if j != i]
        v_inv = linalg.inverse(Phi[others], p)
        # row_i @ Phi[others]^T = A[i, others]
        rows.append(linalg.matmul(A[..., i, others], v_inv.T, p))
    PhiS = np.stack(rows, axis=-2)
    return linalg.matmul(linalg.inverse(Phi[:w], p), PhiS, p)


def decode_pair(X, Phi, lam, p):
    """Return symmetric ``(S, T)`` with ``X = Phi S + diag(lam) Phi T``.

    ``Phi`` is ``m x (m-1)`` Vandermonde on distinct points and ``lam``
    holds ``m`` distinct nonzero values. ``X`` may carry batch dimensions.
    """
    Phi = linalg.asmatrix(Phi, p)
    m, w = Phi.shape
    if w != m - 1:
        raise ValueError(f"Phi must be m x (m-1), got {Phi.shape}")
    if len(lam) != m:
        raise ValueError("need one lambda per row of Phi")
    if any(int(x) % p == 0 for x in lam):
        raise ValueError("lambda values must be nonzero")
    X = linalg.asmatrix(X, p)
    Y = linalg.matmul(X, Phi.T, p)
    A, B = _off_diagonal_split(Y, lam, p)
    return _symmetric_from_gram(A, Phi, p), _symmetric_from_gram(B, Phi, p)


def decode_inner(params, inner_indices, rows):
    """Recover the message matrix from ``k_inner`` inner codeword rows."""
    p = params.p
    if len(inner_indices) != params.k_inner:
        raise ValueError(f"need {params.k_inner} inner rows, got {len(inner_indices)}")
    G = build_generator(params)
    Phi = G[[i - 1 for i in inner_indices], : params.alpha]
    lam = [params.field.power(i, params.mu) for i in inner_indices]
    S, T = decode_pair(rows, Phi, lam, p)
    return message_from_symmetric(params, S, T)


def with_imaginary_nodes(params, data):
    """Prepend the ``delta`` all-zero imaginary nodes to outer rows.

    Returns inner indices and rows ``(..., k_inner, alpha)``.
    """
    idx = [params.inner_index(i) for i in data.node_indices]
    if params.delta == 0:
        return idx, data.rows
    rows = data.rows
    zeros = np.zeros(rows.shape[:-2] + (params.delta, params.alpha), dtype=DTYPE)
    return list(range(1, params.delta + 1)) + idx, np.concatenate([zeros, rows], axis=-2)


def recover_message_matrix(params, data):
    """Message matrix behind ``k`` outer shards (imaginary nodes included)."""
    if len(data.node_indices) < params.k:
        raise ValueError(f"need {params.k} nodes, got {len(data.node_indices)}")
    if len(data.node_indices) > params.k:
        data = ReconstructionInput(data.node_indices[: params.k], data.rows[..., : params.k, :])
    if any(not 1 <= i <= params.n for i in data.node_indices):
        raise ValueError(f"node indices must lie in 1..{params.n}")
    idx, rows = with_imaginary_nodes(params, data)
    return decode_inner(params, idx, rows)


def reconstruct_message(params, data):
    """Raw (packed ``S`` then ``T``) message symbols behind ``k`` shards.

    For shortened codes this is the inner message of length
    ``k_inner * alpha``; :func:`mscr.systematic.decode_systematic` maps it
    to the user's data.
    """
    return unpack_message(recover_message_matrix(params, data))
