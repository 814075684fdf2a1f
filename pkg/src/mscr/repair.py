"""Two-phase cooperative repair of ``t`` simultaneous node failures.

Phase 1: newcomer ``i`` downloads ``c_j . phi_i`` from each of ``d`` helpers
and inverts the helpers' generator rows to get ``w = M phi_i^T``. From ``w``
it forms ``mu`` linear equations in its own lost row ``c_i``.

Phase 2: every other newcomer ``j`` sends ``psi_i . w_j = c_i . phi_j``,
adding ``t-1`` equations. The resulting ``alpha x alpha`` system is
invertible whenever the ``mu``-th powers of the points are distinct.

Node indices in this module are outer (1..n). For shortened codes the
``delta`` imaginary nodes join every helper set as silent zero helpers.
"""

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .linalg import DTYPE
from .pm_core import build_generator


class RepairError(ValueError):
    pass


@dataclass(frozen=True)
class Transfer:
    phase: int
    sender: int
    receiver: int
    symbols: int

    def to_line(self):
        return f"{self.phase},{self.sender},{self.receiver},{self.symbols}"


def repair_vector(params, i):
    return linalg.vandermonde([params.point(i)], params.alpha, params.p)[0]


def generator_row(params, i):
    return linalg.vandermonde([params.point(i)], params.d_inner, params.p)[0]


def helper_symbol(params, helper_row, newcomer):
    """What a helper sends: its stored row contracted with ``phi_newcomer``."""
    return linalg.matmul(helper_row, repair_vector(params, newcomer), params.p)


def repair_rows_matrix(params, helpers):
    """``Psi_repair``: generator rows of the imaginary nodes then the helpers."""
    G = build_generator(params)
    inner = list(range(1, params.delta + 1)) + [params.inner_index(j) for j in helpers]
    return G[[i - 1 for i in inner]]


def recover_m_phi(params, newcomer, helpers, symbols):
    """Solve ``Psi_repair w = symbols`` for ``w = M phi_newcomer^T``.

    ``symbols`` has shape ``(..., d)`` in the order of ``helpers``; zeros
    for the imaginary nodes are prepended here.
    """
    if len(helpers) != params.d:
        raise RepairError(f"need exactly d={params.d} helpers, got {len(helpers)}")
    symbols = np.asarray(symbols, dtype=DTYPE)
    zeros = np.zeros(symbols.shape[:-1] + (params.delta,), dtype=DTYPE)
    rhs = np.concatenate([zeros, symbols], axis=-1)
    return linalg.solve_rows(repair_rows_matrix(params, helpers), rhs, params.p)


def phase1_matrix(params, newcomer):
    """Coefficient rows ``H_{i,1}``: row ``l`` has ``a_i**(j mu)`` at column ``j mu + l``."""
    p, mu, alpha = params.p, params.mu, params.alpha
    a_mu = params.field.power(params.inner_index(newcomer), mu)
    H1 = np.zeros((mu, alpha), dtype=DTYPE)
    for l in range(mu):
        coef, col = 1, l
        while col < alpha:
            H1[l, col] = coef
            coef = coef * a_mu % p
            col += mu
    return H1


def phase1_combination(params, newcomer):
    """Weights turning ``w`` (length ``d_inner``) into the ``mu`` Phase-1 values."""
    p, mu = params.p, params.mu
    a_mu = params.field.power(params.inner_index(newcomer), mu)
    W = np.zeros((mu, params.d_inner), dtype=DTYPE)
    for l in range(mu):
        coef, idx = 1, l
        while idx < params.d_inner:
            W[l, idx] = coef
            coef = coef * a_mu % p
            idx += mu
    return W


def phase1_equations(params, newcomer, omega):
    """The ``mu`` rows of ``H_{i,1}`` and their right-hand sides from ``w``."""
    W = phase1_combination(params, newcomer)
    return phase1_matrix(params, newcomer), linalg.matmul(omega, W.T, params.p)


def phase2_exchange(params, sender, receiver, omega_sender):
    """Symbol ``psi_receiver . w_sender`` (equal to ``c_receiver . phi_sender``)."""
    if omega_sender is None:
        raise RepairError(f"node {sender} has not completed phase 1")
    return linalg.matmul(omega_sender, generator_row(params, receiver), params.p)


def repair_matrix(params, newcomer, failed):
    """Full ``alpha x alpha`` coefficient matrix ``H`` for one newcomer."""
    others = [j for j in failed if j != newcomer]
    rows = [phase1_matrix(params, newcomer)]
    if others:
        rows.append(np.stack([repair_vector(params, j) for j in others]))
    return np.concatenate(rows, axis=0)


def solve_newcomer(params, newcomer, H, rhs):
    """Recover ``c_i`` from ``H c_i^T = rhs``; ``rhs`` may be batched ``(..., alpha)``."""
    H = linalg.asmatrix(H, params.p)
    if H.shape != (params.alpha, params.alpha):
        raise RepairError(f"H must be {params.alpha}x{params.alpha}, got {H.shape}")
    try:
        return linalg.solve_rows(H, rhs, params.p)
    except linalg.SingularMatrixError as e:
        raise RepairError(
            f"repair system for node {newcomer} is singular; the points' "
            f"{params.mu}-th powers are not distinct") from e


def reduce_repair_matrix(params, newcomer, failed):
    """Column-reduce ``H`` block by block to ``[[I, 0], [P, D Ptilde]]``.

    Columns split into ``z`` blocks of ``mu`` (the last one ``r`` wide).
    Working from the last block down, block ``b`` loses ``a_i**mu`` times
    the matching columns of block ``b-1``. Returns the reduced matrix.
    """
    p, mu = params.p, params.mu
    H = repair_matrix(params, newcomer, failed).copy()
    a_mu = params.field.power(params.inner_index(newcomer), mu)
    starts = list(range(0, params.alpha, mu))
    for b in range(len(starts) - 1, 0, -1):
        lo = starts[b]
        width = min(mu, params.alpha - lo)
        prev = starts[b - 1]
        H[:, lo:lo + width] = (H[:, lo:lo + width] - a_mu * H[:, prev:prev + width]) % p
    return H


@dataclass
class RepairSession:
    """State of one cooperative repair across all newcomers."""

    params: object
    failed: tuple
    helpers: dict
    phase1: dict = field(default_factory=dict)
    phase1_rhs: dict = field(default_factory=dict)
    phase2: dict = field(default_factory=dict)
    system: dict = field(default_factory=dict)
    determinants: dict = field(default_factory=dict)
    log: list = field(default_factory=list)

    def downloads(self, newcomer, phase=None):
        return sum(x.symbols for x in self.log
                   if x.receiver == newcomer and (phase is None or x.phase == phase))

    def per_newcomer(self):
        return {i: self.downloads(i) for i in self.failed}

    def total(self):
        return sum(x.symbols for x in self.log)

    def run_phase1(self, shards):
        """Each newcomer collects one symbol per helper and recovers ``w``."""
        params = self.params
        for i in self.failed:
            hs = self.helpers[i]
            syms = []
            for j in hs:
                row = np.asarray(shards[j], dtype=DTYPE)
                s = helper_symbol(params, row, i)
                syms.append(s)
                self.log.append(Transfer(1, j, i, _stripes(row)))
            omega = recover_m_phi(params, i, hs, np.stack(syms, axis=-1))
            self.phase1[i] = omega
            self.phase1_rhs[i] = phase1_equations(params, i, omega)

    def run_phase2(self):
        missing = [i for i in self.failed if i not in self.phase1]
        if missing:
            raise RepairError(f"phase 2 before phase 1 finished for nodes {missing}")
        for i in self.failed:
            got = []
            for j in self.failed:
                if j == i:
                    continue
                s = phase2_exchange(self.params, j, i, self.phase1.get(j))
                got.append((j, s))
                self.log.append(Transfer(2, j, i, _stripes(s, scalar_ok=True)))
            self.phase2[i] = got

    def solve(self):
        params = self.params
        out = {}
        for i in self.failed:
            H1, v1 = self.phase1_rhs[i]
            H = repair_matrix(params, i, self.failed)
            vals = [v1] + [np.asarray(s)[..., None] for _, s in self.phase2[i]]
            rhs = np.concatenate(vals, axis=-1)
            self.system[i] = (H, rhs)
            self.determinants[i] = linalg.det(H, params.p)
            out[i] = solve_newcomer(params, i, H, rhs)
        return out


def _stripes(a, scalar_ok=False):
    a = np.asarray(a)
    if scalar_ok:
        return int(np.prod(a.shape)) if a.ndim else 1
    return int(np.prod(a.shape[:-1])) if a.ndim > 1 else 1


def default_helpers(params, failed, alive):
    """The ``d`` lowest-indexed surviving nodes."""
    pool = sorted(j for j in alive if j not in failed)
    if len(pool) < params.d:
        raise RepairError(f"only {len(pool)} survivors, need d={params.d} helpers")
    return tuple(pool[: params.d])


def plan_helpers(params, failed, alive, helpers=None):
    """Normalise a helper choice into a per-newcomer mapping."""
    failed = tuple(sorted(failed))
    if helpers is None:
        hs = default_helpers(params, failed, alive)
        return {i: hs for i in failed}
    if not isinstance(helpers, dict):
        helpers = {i: tuple(helpers) for i in failed}
    plan = {}
    for i in failed:
        hs = tuple(helpers[i])
        if len(hs) != params.d or len(set(hs)) != params.d:
            raise RepairError(f"newcomer {i} needs {params.d} distinct helpers, got {hs}")
        bad = [j for j in hs if j in failed or j not in alive]
        if bad:
            raise RepairError(f"helpers {bad} for node {i} are not surviving nodes")
        plan[i] = hs
    return plan


def cooperative_repair(params, shards, failed, helpers=None):
    """Regenerate the rows of ``failed`` from surviving ``shards``.

    ``shards`` maps outer index to stored rows ``(..., alpha)``. Returns
    ``(repaired, session)`` with ``repaired`` mapping each failed index to
    its regenerated rows.
    """
    failed = tuple(sorted(set(failed)))
    if len(failed) != params.t:
        raise RepairError(f"cooperative repair handles exactly t={params.t} failures, "
                          f"got {len(failed)}")
    if any(not 1 <= i <= params.n for i in failed):
        raise RepairError(f"failed indices must lie in 1..{params.n}")
    alive = [j for j in shards if j not in failed]
    session = RepairSession(params, failed, plan_helpers(params, failed, alive, helpers))
    session.run_phase1(shards)
    session.run_phase2()
    return session.solve(), session
