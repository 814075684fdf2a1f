import itertools

import numpy as np
import pytest

from mscr import derive_params
from mscr.cluster_sim import (audit_bandwidth, create_cluster, fail_nodes, fail_random,
                              run_cooperative_repair)
from mscr.repair import RepairError, Transfer


@pytest.fixture
def params():
    return derive_params(5, 3, 3, 2)


def test_create(params):
    msg = np.array([1, 2, 3, 4, 5, 6])
    c = create_cluster(params, msg)
    assert c.shard(1).tolist() == [1, 2]
    assert c.traffic_log == []
    zero = create_cluster(params, np.zeros(6, dtype=int))
    assert not any(s.any() for s in zero.nodes)


def test_fail(params):
    c = create_cluster(params, np.arange(6))
    fail_nodes(c, set())
    assert c.failed() == ()
    fail_nodes(c, {1, 2})
    assert c.failed() == (1, 2)
    c2 = create_cluster(params, np.arange(6))
    with pytest.raises(RepairError):
        fail_nodes(c2, {1, 2, 3})


def test_worked_repair_and_audit(params):
    c = create_cluster(params, np.array([1, 2, 3, 4, 5, 6]))
    before = [s.copy() for s in c.nodes]
    run = run_cooperative_repair(fail_nodes(c, {1, 2}))
    assert all(np.array_equal(a, b) for a, b in zip(before, run.nodes))
    report = audit_bandwidth(c)
    assert report.per_newcomer == {1: 4, 2: 4}
    assert report.total == 8 and report.passed
    lines = c.export_traffic().splitlines()
    assert len(lines) == 8
    assert lines[0] == "1,3,1,1"
    assert lines[-1] == "2,1,2,1"


def test_tampered_log_fails(params):
    c = create_cluster(params, np.arange(6))
    run_cooperative_repair(fail_nodes(c, {2, 5}))
    c.traffic_log.append(Transfer(1, 4, 2, 1))
    assert not audit_bandwidth(c).passed


@pytest.mark.parametrize("policy", ["lowest", "round-robin"])
def test_all_failure_pairs(params, policy, rng):
    msg = rng.integers(0, params.p, (8, params.B))
    for F in itertools.combinations(range(1, 6), 2):
        c = create_cluster(params, msg)
        before = [s.copy() for s in c.nodes]
        run_cooperative_repair(fail_nodes(c, F), policy)
        assert all(np.array_equal(a, b) for a, b in zip(before, c.nodes))
        assert audit_bandwidth(c).passed


def test_round_robin_uses_different_helpers():
    params = derive_params(9, 4, 5, 2)
    c = create_cluster(params, np.zeros(params.B, dtype=int))
    run_cooperative_repair(fail_nodes(c, {1, 2}), "round-robin")
    sets = {i: {x.sender for x in c.traffic_log if x.phase == 1 and x.receiver == i}
            for i in (1, 2)}
    assert sets[1] != sets[2]


def test_rejects_partial_batch(params):
    c = create_cluster(params, np.arange(6))
    with pytest.raises(RepairError, match="exactly t"):
        run_cooperative_repair(fail_nodes(c, {1}))


def test_deterministic_seeded_failures(rng):
    params = derive_params(9, 4, 5, 3)
    msg = rng.integers(0, params.p, params.B)
    runs = []
    for _ in range(2):
        c = fail_random(create_cluster(params, msg, seed=7))
        runs.append((c.failed(), c.export_traffic()))
        run_cooperative_repair(c)
        runs[-1] += (c.export_traffic(),)
    assert runs[0] == runs[1]
    assert len(runs[0][0]) == 3
