"""Edge (switchboard) controllability via matching in edge space.

The maximum matching runs on the bipartite split of the line digraph;
unmatched edge-space in-copies are the driver edges. Controlling an edge
is delegated to its source node, so the edge-control driver-node set is
the set of unique sources of driver edges. Both fractions are reported:
m_d over edges (what is actually controlled) and n_d over nodes (what
injects the signals). Isolated nodes do not exist in edge space and are
never drivers here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ContractViolationError
from .graph import DirectedGraph, Edge, to_bipartite, to_line_digraph
from .matching import has_alternate_maximum_matching, maximum_matching
from .node_control import ALTERNATE_CHECK_LIMIT


@dataclass(frozen=True)
class EdgeControlAnalysis:
    """Driver edges (fraction m_d of E) and their source nodes (fraction
    n_d of N) for edge dynamics."""

    driver_edges: frozenset[Edge]
    m_d: float
    driver_nodes: frozenset[int]
    n_d: float
    line_matching_size: int
    alternate_matchings: bool | None
    method: str = field(default="edge-switchboard")


def analyze_edge_control(g: DirectedGraph) -> EdgeControlAnalysis:
    """Driver edges and driver nodes for controllability of edge states.

    |driver_edges| = max(E - |M|, 1) for E >= 1, where M is the canonical
    maximum matching on the bipartite split of the line digraph; a
    perfectly matched edge space falls back to one canonical driver edge
    (the lexicographically smallest). An edgeless graph needs nothing:
    all sets empty, m_d = n_d = 0.
    """
    edge_total = g.edge_count
    if edge_total == 0:
        return EdgeControlAnalysis(
            driver_edges=frozenset(),
            m_d=0.0,
            driver_nodes=frozenset(),
            n_d=0.0,
            line_matching_size=0,
            alternate_matchings=False,
        )
    ld = to_line_digraph(g)
    b = to_bipartite(ld.graph)
    m = maximum_matching(b)
    unmatched = set(m.unmatched_right) or {0}
    driver_edges = frozenset(ld.edge_of_node[i] for i in unmatched)
    driver_nodes = frozenset(src for src, _ in driver_edges)
    alternates: bool | None = None
    if ld.graph.node_count <= ALTERNATE_CHECK_LIMIT:
        alternates = has_alternate_maximum_matching(b, m)
    return EdgeControlAnalysis(
        driver_edges=driver_edges,
        m_d=len(driver_edges) / edge_total,
        driver_nodes=driver_nodes,
        n_d=len(driver_nodes) / g.node_count,
        line_matching_size=m.size,
        alternate_matchings=alternates,
    )


def driver_edge_report(a: EdgeControlAnalysis, g: DirectedGraph) -> dict:
    """Report record pairing (n_d, m_d) with explicit method labels.

    Every fraction is emitted next to a "controlled" tag so edge-control
    numbers are never mistaken for node-control ones. Raises
    ContractViolationError when ``a`` was not produced from ``g``.
    """
    edge_set = set(g.edges)
    if not set(a.driver_edges) <= edge_set:
        raise ContractViolationError("driver edges are not edges of the graph")
    e = g.edge_count
    if e == 0:
        if a.driver_edges or a.driver_nodes or a.m_d or a.n_d:
            raise ContractViolationError("nonempty analysis for an edgeless graph")
    else:
        if len(a.driver_edges) != max(e - a.line_matching_size, 1):
            raise ContractViolationError("driver-edge count inconsistent with matching")
        if a.m_d != len(a.driver_edges) / e:
            raise ContractViolationError("m_d inconsistent with driver edges")
        if a.driver_nodes != frozenset(src for src, _ in a.driver_edges):
            raise ContractViolationError("driver nodes are not the driver-edge sources")
        if a.n_d != len(a.driver_nodes) / g.node_count:
            raise ContractViolationError("n_d inconsistent with driver nodes")
    return {
        "method": a.method,
        "controlled": "edges",
        "n_d": a.n_d,
        "m_d": a.m_d,
        "driver_nodes": sorted(a.driver_nodes),
        "driver_edges": sorted(a.driver_edges),
        "driver_edge_count": len(a.driver_edges),
        "line_matching_size": a.line_matching_size,
        "alternate_matchings": a.alternate_matchings,
    }
