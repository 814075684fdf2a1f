"""Product-matrix MSR code with d = 2k-2, repairing one failure at a time.

Kept as an independent regression anchor for the shared field, linear
algebra and two-matrix decoder.
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .field import FieldSpec
from .linalg import DTYPE
from .reconstruct import decode_pair


@dataclass(frozen=True)
class MsrParams:
    n: int
    k: int
    d: int
    alpha: int
    B: int
    field: FieldSpec = dc_field(repr=False)

    @property
    def p(self):
        return self.field.modulus


def msr_params(n, k, modulus=None, min_modulus=2):
    if k < 2:
        raise ValueError("k must be at least 2")
    d = 2 * k - 2
    if d > n - 1:
        raise ValueError(f"d=2k-2={d} needs at least {d + 1} nodes, n={n}")
    fs = FieldSpec.build(n, k - 1, modulus=modulus, min_p=min_modulus)
    return MsrParams(n, k, d, k - 1, k * (k - 1), fs)


def generator(params):
    return linalg.vandermonde(params.field.points, params.d, params.p)


def message_matrix(params, symbols):
    symbols = np.asarray(symbols, dtype=DTYPE)
    if symbols.shape[-1] != params.B:
        raise ValueError(f"expected {params.B} symbols, got {symbols.shape[-1]}")
    half = params.B // 2
    S1 = linalg.symmetric_pack(symbols[..., :half], params.alpha)
    S2 = linalg.symmetric_pack(symbols[..., half:], params.alpha)
    return np.concatenate([S1, S2], axis=-2) % params.p


def msr_encode(params, symbols):
    """Rows ``(..., n, alpha)``; node ``i`` is row ``i-1``."""
    return linalg.matmul(generator(params), message_matrix(params, symbols), params.p)


def msr_repair(params, failed, helpers, helper_rows):
    """Rebuild node ``failed`` from ``d`` helpers, one symbol each.

    Returns ``(row, downloaded_symbols)``.
    """
    p, a = params.p, params.alpha
    if len(helpers) != params.d or failed in helpers:
        raise ValueError(f"need {params.d} helpers other than node {failed}")
    phi = linalg.vandermonde([params.field.point(failed)], a, p)[0]
    helper_rows = np.asarray(helper_rows, dtype=DTYPE)
    sent = linalg.matmul(helper_rows, phi, p)  # (..., d)
    psi = generator(params)[[j - 1 for j in helpers]]
    omega = linalg.solve_rows(psi, sent, p)
    # S1 phi^T and S2 phi^T transpose to phi S1, phi S2 by symmetry
    lam = params.field.power(failed, a)
    row = (omega[..., :a] + lam * omega[..., a:]) % p
    return row, len(helpers) * (int(np.prod(sent.shape[:-1])) if sent.ndim > 1 else 1)


def msr_reconstruct(params, nodes, rows):
    nodes = list(nodes)
    if len(set(nodes)) != len(nodes):
        raise ValueError("duplicate node indices")
    if len(nodes) != params.k:
        raise ValueError(f"need exactly k={params.k} nodes")
    p, a = params.p, params.alpha
    Phi = linalg.vandermonde([params.field.point(i) for i in nodes], a, p)
    lam = [params.field.power(i, a) for i in nodes]
    S1, S2 = decode_pair(rows, Phi, lam, p)
    return np.concatenate([linalg.symmetric_unpack(S1), linalg.symmetric_unpack(S2)], axis=-1)
