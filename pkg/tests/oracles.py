"""Independent brute-force oracles used only by the test suite.

These deliberately avoid the library's own algorithms: matching sizes
come from a bitmask DP over right nodes, reachability from a plain BFS,
and the matrix exponential reference from mpmath at high precision.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

import mpmath
import numpy as np

from netctl.graph import DirectedGraph


def max_matching_size_brute(left_count: int, right_count: int, edges) -> int:
    """Maximum bipartite matching size by exhaustive DP (right <= ~14)."""
    adj = [[] for _ in range(left_count)]
    for left, right in edges:
        if right not in adj[left]:
            adj[left].append(right)

    @lru_cache(maxsize=None)
    def best(i: int, used: int) -> int:
        if i == left_count:
            return 0
        result = best(i + 1, used)
        for r in adj[i]:
            if not used >> r & 1:
                result = max(result, 1 + best(i + 1, used | (1 << r)))
        return result

    size = best(0, 0)
    best.cache_clear()
    return size


def reachable_from(g: DirectedGraph, sources) -> set[int]:
    """Plain BFS over out-edges."""
    adj = g.out_adjacency()
    seen = set(sources)
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def controllability_matrix_naive(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Unnormalized [B, AB, ..., A^(N-1)B] via matrix powers."""
    n = a.shape[0]
    blocks = [np.linalg.matrix_power(a, k) @ b for k in range(n)]
    return np.hstack(blocks)


def expm_reference(a: np.ndarray, dps: int = 50) -> np.ndarray:
    """Matrix exponential at ``dps`` decimal digits via mpmath."""
    with mpmath.workdps(dps):
        result = mpmath.expm(mpmath.matrix(a.tolist()))
        return np.array(result.tolist(), dtype=float)


def hill_tail_exponent(degrees, k_min: int) -> float:
    """Continuous maximum-likelihood tail-exponent estimate over values
    >= k_min (with the usual -0.5 discreteness shift)."""
    tail = [d for d in degrees if d >= k_min]
    if len(tail) < 10:
        raise ValueError("tail too small for a stable fit")
    log_sum = sum(np.log(d / (k_min - 0.5)) for d in tail)
    return 1.0 + len(tail) / log_sum
