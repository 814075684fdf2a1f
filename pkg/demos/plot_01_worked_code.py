"""
A small cooperative regenerating code by hand
=============================================

Five nodes, any three recover the data, two failures are repaired together
from three helpers each. Everything lives in GF(7).
"""

import itertools

import numpy as np

from mscr import derive_params, pack_message
from mscr.pm_core import build_generator, encode_raw
from mscr.reconstruct import ReconstructionInput, reconstruct_message

params = derive_params(5, 3, 3, 2)
print(params.alpha, params.B, params.p)

# Six message symbols fill two symmetric 2x2 matrices S and T
mm = pack_message(params, [1, 2, 3, 4, 5, 6])
print(mm.S)
print(mm.T)
print(mm.M)

# Each node stores one row of G @ M
G = build_generator(params)
print(G)
rows = {s.node_index: s.symbols for s in encode_raw(params, mm)}
for i, r in rows.items():
    print(i, r)

# Any three rows give the six symbols back
for sub in itertools.combinations(range(1, 6), 3):
    data = ReconstructionInput(sub, np.stack([rows[i] for i in sub]))
    print(sub, reconstruct_message(params, data))
