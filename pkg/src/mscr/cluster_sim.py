"""Deterministic in-process storage cluster with metered cooperative repair."""

from dataclasses import dataclass, field

import numpy as np

from .repair import RepairError, cooperative_repair
from .systematic import encode_systematic

FAILED = None


def lowest_index_policy(params, newcomer, failed, alive):
    return tuple(sorted(alive)[: params.d])


def round_robin_policy(params, newcomer, failed, alive):
    """Rotate the survivor list by the newcomer's position in the failed set."""
    pool = sorted(alive)
    shift = failed.index(newcomer) * params.d % len(pool)
    rotated = pool[shift:] + pool[:shift]
    return tuple(sorted(rotated[: params.d]))


POLICIES = {"lowest": lowest_index_policy, "round-robin": round_robin_policy}


@dataclass
class BandwidthReport:
    per_newcomer: dict
    total: int
    expected_per_newcomer: int
    storage_ok: bool
    passed: bool

    def __str__(self):
        lines = [f"node {i}: {n} symbols" for i, n in sorted(self.per_newcomer.items())]
        lines.append(f"total: {self.total} (optimum {self.expected_per_newcomer} per newcomer)")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


@dataclass
class Cluster:
    params: object
    nodes: list
    rng_seed: int = 0
    traffic_log: list = field(default_factory=list)
    repaired: tuple = ()
    session_start: int = 0

    @property
    def stripes(self):
        first = next(s for s in self.nodes if s is not FAILED)
        return 1 if first.ndim == 1 else int(np.prod(first.shape[:-1]))

    def failed(self):
        return tuple(i + 1 for i, s in enumerate(self.nodes) if s is FAILED)

    def alive(self):
        return [i + 1 for i, s in enumerate(self.nodes) if s is not FAILED]

    def shard(self, i):
        return self.nodes[i - 1]

    def export_traffic(self):
        return "".join(x.to_line() + "\n" for x in self.traffic_log)


def create_cluster(params, message, seed=0):
    shards = encode_systematic(params, message)
    return Cluster(params, [s.symbols for s in shards], rng_seed=seed)


def fail_nodes(cluster, indices):
    indices = set(indices)
    bad = [i for i in indices if not 1 <= i <= cluster.params.n]
    if bad:
        raise ValueError(f"no such nodes: {sorted(bad)}")
    already = set(cluster.failed())
    if indices & already:
        raise ValueError(f"nodes {sorted(indices & already)} already failed")
    if len(already | indices) > cluster.params.t:
        raise RepairError(f"{len(already | indices)} failures exceed the code's "
                          f"repair capability t={cluster.params.t}")
    for i in indices:
        cluster.nodes[i - 1] = FAILED
    return cluster


def fail_random(cluster, count=None):
    """Fail ``count`` (default t) alive nodes chosen by the cluster's seed."""
    count = cluster.params.t if count is None else count
    rng = np.random.default_rng(cluster.rng_seed)
    pick = rng.choice(cluster.alive(), size=count, replace=False)
    return fail_nodes(cluster, sorted(int(x) for x in pick))


def run_cooperative_repair(cluster, helper_policy="lowest"):
    """Repair all failed nodes; traffic is appended to the cluster log."""
    params = cluster.params
    failed = cluster.failed()
    if len(failed) != params.t:
        raise RepairError(f"repair runs on exactly t={params.t} failures, "
                          f"{len(failed)} pending; batch failures first")
    alive = cluster.alive()
    if len(alive) < params.d:
        raise RepairError(f"{len(alive)} survivors cannot supply d={params.d} helpers")
    policy = POLICIES[helper_policy] if isinstance(helper_policy, str) else helper_policy
    helpers = {i: policy(params, i, failed, alive) for i in failed}
    shards = {j: cluster.shard(j) for j in alive}
    repaired, session = cooperative_repair(params, shards, failed, helpers)
    for i, row in repaired.items():
        cluster.nodes[i - 1] = row
    cluster.session_start = len(cluster.traffic_log)
    cluster.traffic_log.extend(session.log)
    cluster.repaired = failed
    return cluster


def audit_bandwidth(cluster):
    """Compare the last repair's traffic against ``d + t - 1`` per newcomer."""
    params = cluster.params
    stripes = cluster.stripes
    expect = params.repair_bandwidth * stripes
    per = {i: 0 for i in cluster.repaired}
    for x in cluster.traffic_log[cluster.session_start:]:
        per[x.receiver] = per.get(x.receiver, 0) + x.symbols
    storage_ok = all(s is not FAILED and s.shape[-1] == params.alpha for s in cluster.nodes)
    passed = (bool(per) and set(per) == set(cluster.repaired)
              and all(v == expect for v in per.values()) and storage_ok)
    return BandwidthReport(per, sum(per.values()), expect, storage_ok, passed)
