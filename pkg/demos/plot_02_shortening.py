"""
Shortened, systematic codes
===========================

When d is larger than 2k-1-t the code is built from a larger inner code
whose first delta systematic nodes are forced to zero and never stored.
"""

import numpy as np

from mscr import decode_systematic, derive_params, encode_systematic
from mscr.systematic import encode_codeword

params = derive_params(10, 4, 8, 2)
print("delta", params.delta)
print("inner", params.n_inner, params.k_inner, params.d_inner)

rng = np.random.default_rng(1)
msg = rng.integers(0, params.p, params.B)

# The imaginary nodes hold zeros
C = encode_codeword(params, msg)
print(C[: params.delta])

# The first k stored shards are the message itself
shards = encode_systematic(params, msg)
print(np.concatenate([s.symbols for s in shards[: params.k]]))
print(msg)

# Decode from parity shards only
parity = {s.node_index: s.symbols for s in shards[-params.k:]}
print(np.array_equal(decode_systematic(params, parity), msg))

# Many stripes at once: leading dimensions broadcast through every call
batch = rng.integers(0, params.p, (1000, params.B))
rows = {s.node_index: s.symbols for s in encode_systematic(params, batch)}
print(rows[7].shape)
print(np.array_equal(decode_systematic(params, {i: rows[i] for i in (2, 5, 8, 10)}), batch))
