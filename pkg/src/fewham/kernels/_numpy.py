"""Vectorized numpy replacements for kernels that are too slow as plain Python."""

from __future__ import annotations

import numpy as np


def held_karp(mult, n, s, t, modulus):
    """Same contract as the compiled subset DP, processed one popcount layer at a time."""
    k = n - 1
    verts = np.array([v for v in range(n) if v != s], dtype=np.int64)
    mk = np.asarray(mult, dtype=np.int64)[np.ix_(verts, verts)]
    size = 1 << k
    dp = np.zeros((size, k), dtype=np.int64)
    for i in range(k):
        dp[1 << i, i] = mult[s, verts[i]]
    masks = np.arange(size, dtype=np.int64)
    pc = np.zeros(size, dtype=np.int64)
    for i in range(k):
        pc += (masks >> i) & 1
    for layer in range(2, k + 1):
        layer_masks = masks[pc == layer]
        for j in range(k):
            sel = layer_masks[(layer_masks >> j) & 1 == 1]
            if sel.size == 0:
                continue
            prev = dp[sel ^ (1 << j)]
            col = prev @ mk[:, j]
            if modulus > 0:
                col %= modulus
            dp[sel, j] = col
    row = dp[size - 1]
    if t >= 0:
        return int(row[int(np.flatnonzero(verts == t)[0])])
    back = np.array([mult[v, s] for v in verts], dtype=np.int64)
    total = int(row @ back)
    if modulus > 0:
        total %= modulus
    return total
