"""Directed-graph core: types, edge-list I/O, derived graphs, statistics.

All types are immutable after construction and safe to share across
threads; every operation in this module is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import EdgeListParseError, EmptyGraphError, SelfLoopError

Edge = tuple[int, int]


@dataclass(frozen=True)
class DirectedGraph:
    """Simple digraph over dense integer node ids ``0 .. node_count-1``.

    ``edges`` holds (source, target) pairs. Self-loops, duplicate edges
    and out-of-range endpoints are rejected at construction.
    """

    node_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "edges", tuple((int(s), int(t)) for s, t in self.edges)
        )
        if self.node_count < 0:
            raise ValueError("node_count must be non-negative")
        seen: set[Edge] = set()
        for src, dst in self.edges:
            if not (0 <= src < self.node_count and 0 <= dst < self.node_count):
                raise ValueError(
                    f"edge ({src}, {dst}) out of range for {self.node_count} nodes"
                )
            if src == dst:
                raise ValueError(f"self-loop at node {src}")
            if (src, dst) in seen:
                raise ValueError(f"duplicate edge ({src}, {dst})")
            seen.add((src, dst))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def out_adjacency(self) -> list[list[int]]:
        """Successor lists, each sorted ascending."""
        adj: list[list[int]] = [[] for _ in range(self.node_count)]
        for src, dst in self.edges:
            adj[src].append(dst)
        for lst in adj:
            lst.sort()
        return adj

    def degrees(self) -> tuple[list[int], list[int]]:
        """Per-node (out-degree, in-degree) lists."""
        outs = [0] * self.node_count
        ins = [0] * self.node_count
        for src, dst in self.edges:
            outs[src] += 1
            ins[dst] += 1
        return outs, ins


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with ``left_count`` + ``right_count`` nodes.

    For graphs built by :func:`to_bipartite`, left node i is the out-copy
    ("plus" copy) and right node i the in-copy ("minus" copy) of digraph
    node i, so a bipartite edge (i, j) corresponds to the digraph edge
    i -> j.
    """

    left_count: int
    right_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "edges", tuple((int(l), int(r)) for l, r in self.edges)
        )
        if self.left_count < 0 or self.right_count < 0:
            raise ValueError("partition sizes must be non-negative")
        seen: set[Edge] = set()
        for left, right in self.edges:
            if not (0 <= left < self.left_count and 0 <= right < self.right_count):
                raise ValueError(f"bipartite edge ({left}, {right}) out of range")
            if (left, right) in seen:
                raise ValueError(f"duplicate bipartite edge ({left}, {right})")
            seen.add((left, right))


@dataclass(frozen=True)
class LineDigraph:
    """Edge-space view of a digraph.

    ``graph`` is a digraph whose nodes are the original edges; its edge
    (e1, e2) exists iff the original edges form a directed path of length
    two (target of e1 equals source of e2). ``edge_of_node`` maps each
    edge-space node id back to the original (source, target) edge and is
    a bijection onto the original edge set.
    """

    graph: DirectedGraph
    edge_of_node: tuple[Edge, ...]

    def __post_init__(self):
        if len(self.edge_of_node) != self.graph.node_count:
            raise ValueError("edge_of_node must have one entry per edge-space node")
        if len(set(self.edge_of_node)) != len(self.edge_of_node):
            raise ValueError("edge_of_node must be a bijection")


@dataclass(frozen=True)
class GraphStats:
    """Basic structural statistics of a digraph.

    density is E/(N*(N-1)) (ordered-pair convention), mean_degree is E/N,
    reciprocity the fraction of edges whose reverse also exists.
    """

    density: float
    mean_degree: float
    reciprocity: float
    isolated_count: int

    def __post_init__(self):
        if not 0.0 <= self.density <= 1.0:
            raise ValueError("density out of range")
        if self.mean_degree < 0.0:
            raise ValueError("mean_degree must be non-negative")
        if not 0.0 <= self.reciprocity <= 1.0:
            raise ValueError("reciprocity out of range")
        if self.isolated_count < 0:
            raise ValueError("isolated_count must be non-negative")


@dataclass(frozen=True)
class ParsedEdgeList:
    """Result of :func:`parse_edge_list_report`.

    Keeps the id remapping and pre-cleaning counts so reports can refer
    to the node ids used in the input file and state how many duplicate
    edges were collapsed.
    """

    graph: DirectedGraph
    original_ids: tuple[int, ...]
    raw_edge_count: int
    duplicate_count: int

    def original_id(self, dense: int) -> int:
        return self.original_ids[dense]


def parse_edge_list_report(text: str | Iterable[str]) -> ParsedEdgeList:
    """Parse edge-list text into a digraph, keeping the remapping table.

    Each non-comment, non-blank line must read "src dst" with
    whitespace-separated non-negative integers; lines starting with '#'
    are comments. Node ids need not be contiguous; they are remapped to
    dense ids in ascending order of the original ids. Duplicate edges are
    collapsed; self-loops are rejected.
    """
    if isinstance(text, str):
        lines: Iterable[str] = text.splitlines()
    else:
        lines = (line.rstrip("\n") for line in text)

    raw: list[Edge] = []
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise EdgeListParseError(
                f"expected 'src dst', got {stripped!r}", line=lineno
            )
        try:
            src, dst = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(
                f"non-integer node id in {stripped!r}", line=lineno
            ) from None
        if src < 0 or dst < 0:
            raise EdgeListParseError("node ids must be non-negative", line=lineno)
        if src == dst:
            raise SelfLoopError(node=src, line=lineno)
        raw.append((src, dst))

    ids = sorted({node for edge in raw for node in edge})
    remap = {orig: dense for dense, orig in enumerate(ids)}
    dense_edges = sorted({(remap[s], remap[t]) for s, t in raw})
    graph = DirectedGraph(len(ids), tuple(dense_edges))
    return ParsedEdgeList(
        graph=graph,
        original_ids=tuple(ids),
        raw_edge_count=len(raw),
        duplicate_count=len(raw) - len(dense_edges),
    )


def parse_edge_list(text: str | Iterable[str]) -> DirectedGraph:
    """Parse edge-list text into a digraph (see parse_edge_list_report)."""
    return parse_edge_list_report(text).graph


def serialize_edge_list(g: DirectedGraph, header: str | None = None) -> str:
    """Serialize to edge-list text: one "src dst" per line, sorted
    lexicographically. ``header`` lines, if given, are emitted first as
    '#' comments."""
    lines: list[str] = []
    if header is not None:
        lines.extend(f"# {h}" if h else "#" for h in header.splitlines())
    lines.extend(f"{src} {dst}" for src, dst in sorted(g.edges))
    return "\n".join(lines) + "\n" if lines else ""


def to_bipartite(g: DirectedGraph) -> BipartiteGraph:
    """Split every node into an out-copy (left) and in-copy (right); each
    digraph edge i -> j becomes the bipartite edge (i, j)."""
    return BipartiteGraph(
        left_count=g.node_count, right_count=g.node_count, edges=tuple(g.edges)
    )


def to_line_digraph(g: DirectedGraph) -> LineDigraph:
    """Build the edge-space digraph of ``g``.

    Edge-space node ids follow the lexicographic order of the original
    (source, target) edges, so the construction is deterministic.
    """
    edge_order = sorted(g.edges)
    index = {edge: i for i, edge in enumerate(edge_order)}
    by_source: dict[int, list[int]] = {}
    for edge in edge_order:
        by_source.setdefault(edge[0], []).append(index[edge])

    ld_edges: list[Edge] = []
    for edge in edge_order:
        i = index[edge]
        for j in by_source.get(edge[1], ()):
            ld_edges.append((i, j))
    ld_edges.sort()

    return LineDigraph(
        graph=DirectedGraph(len(edge_order), tuple(ld_edges)),
        edge_of_node=tuple(edge_order),
    )


def compute_stats(g: DirectedGraph) -> GraphStats:
    """Density, mean degree (E/N), reciprocity, and isolated-node count."""
    n, e = g.node_count, g.edge_count
    if n == 0:
        raise EmptyGraphError("statistics are undefined on an empty graph")
    density = e / (n * (n - 1)) if n > 1 else 0.0
    edge_set = set(g.edges)
    reciprocated = sum(1 for src, dst in g.edges if (dst, src) in edge_set)
    reciprocity = reciprocated / e if e else 0.0
    outs, ins = g.degrees()
    isolated = sum(1 for v in range(n) if outs[v] == 0 and ins[v] == 0)
    return GraphStats(
        density=density,
        mean_degree=e / n,
        reciprocity=reciprocity,
        isolated_count=isolated,
    )
