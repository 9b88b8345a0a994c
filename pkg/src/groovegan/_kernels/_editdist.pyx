# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled edit-distance kernels; semantics match ``pyloops`` exactly."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

DEF MAX_STEPS = 33


cdef double _dp(const int* a, int la, const int* b, int lb, double indel) noexcept nogil:
    cdef double prev[MAX_STEPS]
    cdef double cur[MAX_STEPS]
    cdef int i, j
    cdef double best, cand, diff
    if la == 0:
        return lb * indel
    if lb == 0:
        return la * indel
    for j in range(lb + 1):
        prev[j] = j * indel
    for i in range(1, la + 1):
        cur[0] = i * indel
        for j in range(1, lb + 1):
            diff = a[i - 1] - b[j - 1]
            if diff < 0:
                diff = -diff
            best = prev[j - 1] + diff
            cand = prev[j] + indel
            if cand < best:
                best = cand
            cand = cur[j - 1] + indel
            if cand < best:
                best = cand
            cur[j] = best
        for j in range(lb + 1):
            prev[j] = cur[j]
    return prev[lb]


def track_distance(a, b, double indel):
    """Minimum edit cost between two sorted position sequences."""
    cdef cnp.ndarray[cnp.int32_t, ndim=1] aa = np.ascontiguousarray(a, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] bb = np.ascontiguousarray(b, dtype=np.int32)
    return _dp(<const int*> aa.data, aa.shape[0], <const int*> bb.data, bb.shape[0], indel)


def pack_positions(bins):
    """Turn binarized patterns (N, 9, 32) uint8 into padded position arrays."""
    cdef cnp.ndarray[cnp.uint8_t, ndim=3] grid = np.ascontiguousarray(bins, dtype=np.uint8)
    cdef Py_ssize_t n = grid.shape[0], rows = grid.shape[1], steps = grid.shape[2]
    cdef cnp.ndarray[cnp.int32_t, ndim=3] positions = np.zeros((n, rows, steps), dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=2] lengths = np.zeros((n, rows), dtype=np.int32)
    cdef Py_ssize_t i, r, t
    cdef int count
    for i in range(n):
        for r in range(rows):
            count = 0
            for t in range(steps):
                if grid[i, r, t]:
                    positions[i, r, count] = <int> t
                    count += 1
            lengths[i, r] = count
    return positions, lengths


def pair_distances(pos_a, len_a, pos_b, len_b, pairs, double indel):
    """Summed per-track distances for each (i, j) row of ``pairs``."""
    cdef cnp.ndarray[cnp.int32_t, ndim=3] pa = np.ascontiguousarray(pos_a, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=3] pb = np.ascontiguousarray(pos_b, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=2] la = np.ascontiguousarray(len_a, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=2] lb = np.ascontiguousarray(len_b, dtype=np.int32)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] pr = np.ascontiguousarray(pairs, dtype=np.int64)
    cdef Py_ssize_t n_pairs = pr.shape[0], rows = pa.shape[1], steps = pa.shape[2]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n_pairs, dtype=np.float64)
    cdef Py_ssize_t k, r
    cdef cnp.int64_t i, j
    cdef double total
    cdef const int* base_a = <const int*> pa.data
    cdef const int* base_b = <const int*> pb.data
    with nogil:
        for k in range(n_pairs):
            i = pr[k, 0]
            j = pr[k, 1]
            total = 0.0
            for r in range(rows):
                total += _dp(
                    base_a + (i * rows + r) * steps, la[i, r],
                    base_b + (j * rows + r) * steps, lb[j, r],
                    indel,
                )
            out[k] = total
    return out
