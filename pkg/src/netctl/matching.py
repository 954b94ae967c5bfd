"""Maximum-cardinality bipartite matching (Hopcroft-Karp).

The solver is deterministic: adjacency lists are sorted ascending, BFS
layering and the augmenting DFS iterate neighbours in ascending id, and
free left nodes are tried in ascending id. Given the same edge set it
always returns the same (canonical) maximum matching.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import ContractViolationError
from .graph import BipartiteGraph

_UNSET = -1


@dataclass(frozen=True)
class MatchingResult:
    """A maximum matching together with the right-side partition it
    induces (matched vs unmatched in-copies)."""

    pairs: frozenset[tuple[int, int]]
    matched_right: frozenset[int]
    unmatched_right: frozenset[int]
    size: int


def _sorted_adjacency(b: BipartiteGraph) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(b.left_count)]
    for left, right in b.edges:
        adj[left].append(right)
    for lst in adj:
        lst.sort()
    return adj


def _bfs_layers(adj, match_left, match_right, dist) -> int:
    """Layer left nodes by alternating-path distance from free left nodes.

    Returns the distance at which a free right node is first reached, or
    -1 when no augmenting path exists.
    """
    queue: deque[int] = deque()
    for u in range(len(adj)):
        if match_left[u] == _UNSET:
            dist[u] = 0
            queue.append(u)
        else:
            dist[u] = _UNSET
    free_dist = _UNSET
    while queue:
        u = queue.popleft()
        if free_dist != _UNSET and dist[u] >= free_dist:
            continue
        for v in adj[u]:
            w = match_right[v]
            if w == _UNSET:
                if free_dist == _UNSET:
                    free_dist = dist[u] + 1
            elif dist[w] == _UNSET:
                dist[w] = dist[u] + 1
                queue.append(w)
    return free_dist


def _augment(root, adj, match_left, match_right, dist, ptr, free_dist) -> bool:
    """Iterative DFS for one augmenting path of length ``free_dist``."""
    path: list[tuple[int, int]] = []
    u = root
    while True:
        found = _UNSET
        free = False
        while ptr[u] < len(adj[u]):
            v = adj[u][ptr[u]]
            ptr[u] += 1
            w = match_right[v]
            if w == _UNSET:
                if dist[u] + 1 == free_dist:
                    found = v
                    free = True
                    break
            elif dist[w] == dist[u] + 1:
                found = v
                break
        if found == _UNSET:
            dist[u] = _UNSET
            if not path:
                return False
            u, _ = path.pop()
            continue
        if free:
            match_left[u] = found
            match_right[found] = u
            for pl, pr in path:
                match_left[pl] = pr
                match_right[pr] = pl
            return True
        path.append((u, found))
        u = match_right[found]


def maximum_matching(b: BipartiteGraph) -> MatchingResult:
    """Compute a canonical maximum matching of ``b``.

    Hopcroft-Karp, O(E * sqrt(V)). Deterministic given the edge set (see
    module docstring); the returned matching is one of possibly many
    maximum matchings.
    """
    adj = _sorted_adjacency(b)
    match_left = [_UNSET] * b.left_count
    match_right = [_UNSET] * b.right_count
    dist = [_UNSET] * b.left_count

    size = 0
    while True:
        free_dist = _bfs_layers(adj, match_left, match_right, dist)
        if free_dist == _UNSET:
            break
        ptr = [0] * b.left_count
        for u in range(b.left_count):
            if match_left[u] == _UNSET:
                if _augment(u, adj, match_left, match_right, dist, ptr, free_dist):
                    size += 1

    pairs = frozenset(
        (u, match_left[u]) for u in range(b.left_count) if match_left[u] != _UNSET
    )
    matched_right = frozenset(
        v for v in range(b.right_count) if match_right[v] != _UNSET
    )
    unmatched_right = frozenset(range(b.right_count)) - matched_right
    return MatchingResult(
        pairs=pairs,
        matched_right=matched_right,
        unmatched_right=unmatched_right,
        size=size,
    )


def _validate_matching(b: BipartiteGraph, m: MatchingResult) -> None:
    edge_set = set(b.edges)
    lefts: set[int] = set()
    rights: set[int] = set()
    for left, right in m.pairs:
        if (left, right) not in edge_set:
            raise ContractViolationError(
                f"matching pair ({left}, {right}) is not a bipartite edge"
            )
        if left in lefts or right in rights:
            raise ContractViolationError("pairs do not form a matching")
        lefts.add(left)
        rights.add(right)
    if m.size != len(m.pairs):
        raise ContractViolationError("size does not match |pairs|")
    if m.matched_right != frozenset(rights):
        raise ContractViolationError("matched_right inconsistent with pairs")
    if m.unmatched_right != frozenset(range(b.right_count)) - rights:
        raise ContractViolationError("unmatched_right inconsistent with pairs")


def verify_maximality(b: BipartiteGraph, m: MatchingResult) -> bool:
    """Certificate check: true iff no augmenting path exists for ``m``.

    Raises ContractViolationError when ``m`` is not a valid matching
    on ``b``.
    """
    _validate_matching(b, m)
    adj = _sorted_adjacency(b)
    match_left = [_UNSET] * b.left_count
    match_right = [_UNSET] * b.right_count
    for left, right in m.pairs:
        match_left[left] = right
        match_right[right] = left

    visited = [False] * b.left_count
    queue: deque[int] = deque()
    for u in range(b.left_count):
        if match_left[u] == _UNSET:
            visited[u] = True
            queue.append(u)
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            w = match_right[v]
            if w == _UNSET:
                return False
            if not visited[w]:
                visited[w] = True
                queue.append(w)
    return True


def has_alternate_maximum_matching(b: BipartiteGraph, m: MatchingResult) -> bool:
    """True iff a maximum matching different from ``m`` exists.

    A distinct maximum matching must avoid at least one pair of ``m``, so
    it exists iff dropping some matched edge leaves the maximum size
    unchanged. Intended for small graphs; cost is |pairs| extra solves.
    """
    for pair in sorted(m.pairs):
        reduced = tuple(e for e in b.edges if e != pair)
        if maximum_matching(
            BipartiteGraph(b.left_count, b.right_count, reduced)
        ).size == m.size:
            return True
    return False
