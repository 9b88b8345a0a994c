"""Independent oracles the distance tests check against.

The brute-force edit distance enumerates every injective partial matching
between the two onset lists (crossing matchings included, via permutations)
and charges |a_i - b_j| per matched pair plus the flat indel cost per
unmatched onset. It shares no code with the dynamic program it verifies.
"""

from __future__ import annotations

from itertools import combinations, permutations


def brute_force_edit_distance(a, b, indel: float) -> float:
    a = list(a)
    b = list(b)
    best = (len(a) + len(b)) * indel  # delete everything, insert everything
    for k in range(1, min(len(a), len(b)) + 1):
        unmatched = (len(a) - k + len(b) - k) * indel
        for a_sub in combinations(a, k):
            for b_sub in combinations(b, k):
                for b_perm in permutations(b_sub):
                    cost = unmatched + sum(abs(x - y) for x, y in zip(a_sub, b_perm))
                    if cost < best:
                        best = cost
    return best


def all_position_lists(grid: int, max_onsets: int):
    """Every sorted onset list with at most max_onsets onsets on a grid."""
    out = [()]
    for k in range(1, max_onsets + 1):
        out.extend(combinations(range(grid), k))
    return out
