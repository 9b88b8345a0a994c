"""Pure-Python edit-distance kernels.

Fallback twin of the compiled extension in ``_editdist.pyx``; identical
semantics, selected at import time by ``groovegan._kernels``. The dynamic
program aligns two sorted onset-position lists with match cost |a_i - b_j|
(one adjacent swap per step moved) and a flat insert/delete cost.
"""

from __future__ import annotations

import numpy as np


def track_distance(a, b, indel: float) -> float:
    """Minimum edit cost between two sorted position sequences."""
    la, lb = len(a), len(b)
    if la == 0:
        return lb * indel
    if lb == 0:
        return la * indel
    prev = [j * indel for j in range(lb + 1)]
    for i in range(1, la + 1):
        ai = a[i - 1]
        cur = [i * indel]
        for j in range(1, lb + 1):
            best = prev[j - 1] + abs(ai - b[j - 1])
            dele = prev[j] + indel
            if dele < best:
                best = dele
            ins = cur[j - 1] + indel
            if ins < best:
                best = ins
            cur.append(best)
        prev = cur
    return prev[lb]


def pack_positions(bins: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Turn binarized patterns (N, 9, 32) uint8 into padded position arrays.

    Returns (positions (N, 9, 32) int32, lengths (N, 9) int32).
    """
    n, rows, steps = bins.shape
    positions = np.zeros((n, rows, steps), dtype=np.int32)
    lengths = np.zeros((n, rows), dtype=np.int32)
    for i in range(n):
        for r in range(rows):
            idx = np.nonzero(bins[i, r])[0]
            lengths[i, r] = len(idx)
            positions[i, r, : len(idx)] = idx
    return positions, lengths


def pair_distances(
    pos_a: np.ndarray,
    len_a: np.ndarray,
    pos_b: np.ndarray,
    len_b: np.ndarray,
    pairs: np.ndarray,
    indel: float,
) -> np.ndarray:
    """Summed 9-track distances for each (i, j) row of ``pairs``."""
    out = np.empty(len(pairs), dtype=np.float64)
    rows = pos_a.shape[1]
    pos_a_l = pos_a.tolist()
    pos_b_l = pos_b.tolist()
    len_a_l = len_a.tolist()
    len_b_l = len_b.tolist()
    for k, (i, j) in enumerate(np.asarray(pairs, dtype=np.int64)):
        total = 0.0
        for r in range(rows):
            la = len_a_l[i][r]
            lb = len_b_l[j][r]
            total += track_distance(pos_a_l[i][r][:la], pos_b_l[j][r][:lb], indel)
        out[k] = total
    return out
