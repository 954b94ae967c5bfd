from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from netctl.edge_control import analyze_edge_control, driver_edge_report
from netctl.errors import ContractViolationError
from netctl.graph import DirectedGraph, to_line_digraph

from .conftest import directed_graphs
from .oracles import max_matching_size_brute


@st.composite
def disjoint_paths_and_cycles(draw, max_nodes: int = 9):
    """Graphs where every node has in- and out-degree at most one,
    together with the number of maximal paths owning at least one edge."""
    n = draw(st.integers(1, max_nodes))
    order = draw(st.permutations(range(n)))
    edges: list[tuple[int, int]] = []
    path_count = 0
    i = 0
    while i < n:
        seg_len = draw(st.integers(1, n - i))
        seg = order[i : i + seg_len]
        close_cycle = seg_len >= 2 and draw(st.booleans())
        edges.extend(zip(seg, seg[1:]))
        if close_cycle:
            edges.append((seg[-1], seg[0]))
        elif seg_len >= 2:
            path_count += 1
        i += seg_len
    return DirectedGraph(n, tuple(sorted(edges))), path_count


def test_star_all_edges_driven_through_hub(star):
    a = analyze_edge_control(star)
    assert a.driver_edges == {(0, 1), (0, 2)}
    assert a.m_d == 1.0
    assert a.driver_nodes == {0}
    assert a.n_d == pytest.approx(1 / 3)
    assert a.method == "edge-switchboard"


def test_reciprocal_chain_needs_two_sources(reciprocal_chain):
    # exhaustive enumeration over the 4-node edge-space graph shows every
    # maximum matching leaves two edges unmatched, with source set {0, 2}
    a = analyze_edge_control(reciprocal_chain)
    assert len(a.driver_edges) == 2
    assert a.m_d == 0.5
    assert a.driver_nodes == {0, 2}
    assert a.n_d == 0.5


def test_edgeless_graph_needs_nothing():
    a = analyze_edge_control(DirectedGraph(5, ()))
    assert a.driver_edges == frozenset()
    assert a.driver_nodes == frozenset()
    assert a.m_d == 0.0 and a.n_d == 0.0


def test_cycle_floor_designates_one_canonical_edge(three_cycle):
    a = analyze_edge_control(three_cycle)
    assert a.line_matching_size == 3
    assert a.driver_edges == {(0, 1)}
    assert a.driver_nodes == {0}
    assert a.m_d == pytest.approx(1 / 3)


def test_isolated_nodes_never_drive():
    g = DirectedGraph(4, ((0, 1),))
    a = analyze_edge_control(g)
    assert a.driver_nodes == {0}
    assert not a.driver_nodes & {2, 3}
    assert a.n_d == 0.25  # denominator counts all nodes, isolated included


@given(directed_graphs(max_edges=11))
def test_count_formula(g):
    # the brute-force oracle runs on the edge-space graph, whose node
    # count is E: keep E small enough for the bitmask DP
    a = analyze_edge_control(g)
    e = g.edge_count
    ld = to_line_digraph(g)
    lms = max_matching_size_brute(e, e, ld.graph.edges)
    assert a.line_matching_size == lms
    if e == 0:
        assert len(a.driver_edges) == 0
    else:
        assert len(a.driver_edges) == max(e - lms, 1)
    assert a.m_d == (len(a.driver_edges) / e if e else 0.0)


@given(directed_graphs())
def test_driver_nodes_are_exactly_the_sources(g):
    a = analyze_edge_control(g)
    assert a.driver_nodes == {src for src, _ in a.driver_edges}


@given(directed_graphs())
def test_isolated_edges_in_edge_space_are_drivers(g):
    ld = to_line_digraph(g)
    a = analyze_edge_control(g)
    outs, ins = ld.graph.degrees()
    isolated_edges = {
        ld.edge_of_node[i]
        for i in range(ld.graph.node_count)
        if outs[i] == 0 and ins[i] == 0
    }
    assert isolated_edges <= a.driver_edges


@given(disjoint_paths_and_cycles())
def test_deficiency_counts_path_leading_edges(case):
    g, path_count = case
    a = analyze_edge_control(g)
    assert g.edge_count - a.line_matching_size == path_count


class TestDriverEdgeReport:
    def test_star_report(self, star):
        report = driver_edge_report(analyze_edge_control(star), star)
        assert report["method"] == "edge-switchboard"
        assert report["controlled"] == "edges"
        assert report["n_d"] == pytest.approx(1 / 3)
        assert report["m_d"] == 1.0
        assert report["driver_nodes"] == [0]
        assert report["driver_edges"] == [(0, 1), (0, 2)]

    def test_reciprocal_chain_report(self, reciprocal_chain):
        report = driver_edge_report(
            analyze_edge_control(reciprocal_chain), reciprocal_chain
        )
        assert report["n_d"] == 0.5 and report["m_d"] == 0.5

    def test_empty_graph_report(self):
        g = DirectedGraph(3, ())
        report = driver_edge_report(analyze_edge_control(g), g)
        assert report["n_d"] == 0.0 and report["m_d"] == 0.0

    def test_mismatched_graph_rejected(self, star, reciprocal_chain):
        with pytest.raises(ContractViolationError):
            driver_edge_report(analyze_edge_control(reciprocal_chain), star)

    def test_tampered_analysis_rejected(self, star):
        a = analyze_edge_control(star)
        forged = type(a)(
            driver_edges=a.driver_edges,
            m_d=0.123,
            driver_nodes=a.driver_nodes,
            n_d=a.n_d,
            line_matching_size=a.line_matching_size,
            alternate_matchings=a.alternate_matchings,
        )
        with pytest.raises(ContractViolationError):
            driver_edge_report(forged, star)
