"""
Single-failure MSR code
=======================

The d = 2k-2 product-matrix MSR code repairs one node from d helpers, one
symbol each, and decodes with the same two-matrix routine.
"""

import itertools

import numpy as np

from mscr.msr_ref import msr_encode, msr_params, msr_reconstruct, msr_repair

params = msr_params(6, 3)
print(params)
msg = np.arange(params.B) % params.p
rows = msr_encode(params, msg)
print(rows)

row, count = msr_repair(params, 4, (1, 2, 5, 6), rows[[0, 1, 4, 5]])
print(row, rows[3], count)

for sub in itertools.combinations(range(1, 7), 3):
    print(sub, msr_reconstruct(params, sub, rows[[i - 1 for i in sub]]))
