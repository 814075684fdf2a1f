"""
Repairing t failures together
=============================

Each newcomer downloads one symbol from each of d helpers, then trades one
symbol with every other newcomer. Total traffic per newcomer is d + t - 1.
"""

import numpy as np

from mscr import cooperative_repair, derive_params, encode_systematic
from mscr.cluster_sim import audit_bandwidth, create_cluster, fail_nodes, run_cooperative_repair
from mscr.repair import reduce_repair_matrix, repair_matrix

params = derive_params(9, 4, 5, 3)
rng = np.random.default_rng(3)
msg = rng.integers(0, params.p, params.B)
rows = {s.node_index: s.symbols for s in encode_systematic(params, msg)}

failed = (2, 6, 9)
alive = {j: r for j, r in rows.items() if j not in failed}
repaired, session = cooperative_repair(params, alive, failed)
for i in failed:
    print(i, repaired[i], rows[i], session.downloads(i, 1), session.downloads(i, 2))

# The per-newcomer system and its reduced block form
print(repair_matrix(params, 2, failed))
print(reduce_repair_matrix(params, 2, failed))
print(session.determinants)

# Same thing through the cluster simulator, with a traffic log
cluster = create_cluster(params, rng.integers(0, params.p, (50, params.B)), seed=4)
run_cooperative_repair(fail_nodes(cluster, failed), "round-robin")
print(audit_bandwidth(cluster))
print(cluster.export_traffic().splitlines()[:5])
