"""Feasibility graph: pairwise metrics, thresholds, adjacency tables."""

import numpy as np
import pytest

from fogcache.nodegraph import (
    FapNode,
    NodeGraph,
    adjacency_tables,
    build_node_graph,
    pairwise_metrics,
)
from fogcache.popularity import PopularityVector

from conftest import random_node_graph


UNIFORM2 = PopularityVector(np.array([0.5, 0.5]))


def _node(nid, x, y, rate):
    return FapNode(id=nid, position=(x, y), rate=rate, local_pop=UNIFORM2)


def test_pairwise_metrics_hand_values():
    a = _node(1, 0.0, 0.0, 10.0)
    b = _node(2, 3.0, 4.0, 25.0)
    dist, load_gap = pairwise_metrics(a, b)
    assert dist == pytest.approx(5.0)
    assert load_gap == pytest.approx(15.0)
    with pytest.raises(ValueError):
        pairwise_metrics(a, a)


def test_build_node_graph_thresholds_are_inclusive():
    # distance exactly gamma_d and load gap exactly gamma_l both qualify
    faps = (_node(1, 0.0, 0.0, 10.0), _node(2, 5.0, 0.0, 30.0))
    assert build_node_graph(faps, 5.0, 20.0).edges == frozenset({(1, 2)})
    assert build_node_graph(faps, 4.999, 20.0).edges == frozenset()
    assert build_node_graph(faps, 5.0, 20.001).edges == frozenset()


def test_build_node_graph_requires_both_constraints():
    faps = (
        _node(1, 0.0, 0.0, 10.0),
        _node(2, 1.0, 0.0, 11.0),   # close but near-equal load
        _node(3, 100.0, 0.0, 90.0),  # distinct load but far away
    )
    g = build_node_graph(faps, 10.0, 5.0)
    assert g.edges == frozenset()
    g = build_node_graph(faps, 10.0, 0.0)
    assert g.edges == frozenset({(1, 2)})


def test_node_graph_neighbors_and_masks():
    g = NodeGraph.from_edges(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
    assert g.neighbors(1) == (2, 4)
    assert g.neighbors(3) == (2, 4)
    assert g.adjacent(1, 2) and g.adjacent(2, 1)
    assert not g.adjacent(1, 3)
    # vertex v occupies bit v-1; slot 0 of the tuple is unused
    assert g.neighbor_masks[0] == 0
    assert g.neighbor_masks[1] == (1 << 1) | (1 << 3)
    assert g.neighbor_masks[3] == (1 << 1) | (1 << 3)


def test_node_graph_canonicalizes_edge_order():
    g = NodeGraph.from_edges(3, [(2, 1), (3, 2)])
    assert g.edges == frozenset({(1, 2), (2, 3)})


def test_node_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        NodeGraph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        NodeGraph.from_edges(3, [(0, 1)])
    with pytest.raises(ValueError):
        NodeGraph.from_edges(3, [(2, 4)])


def test_build_node_graph_requires_contiguous_ids():
    faps = (_node(1, 0.0, 0.0, 10.0), _node(3, 5.0, 0.0, 30.0))
    with pytest.raises(ValueError):
        build_node_graph(faps, 10.0, 0.0)
    with pytest.raises(ValueError):
        build_node_graph((), 10.0, 0.0)


def test_adjacency_tables_four_cycle():
    g = NodeGraph.from_edges(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
    tables = adjacency_tables(g)
    entries = {t.owner: t.entries for t in tables}
    assert entries == {1: (1, 2, 4), 2: (2, 3), 3: (3, 4)}
    # largest table first, owner breaks size ties
    assert [t.owner for t in tables] == [1, 2, 3]
    assert tables[0].size == 3


def test_adjacency_tables_drop_singletons_and_absorbed_tables():
    # isolated vertex 4 produces no table; a triangle collapses to one table
    g = NodeGraph.from_edges(4, [(1, 2), (1, 3), (2, 3)])
    tables = adjacency_tables(g)
    assert len(tables) == 1
    assert tables[0].owner == 1
    assert tables[0].entries == (1, 2, 3)


def test_adjacency_tables_cover_every_edge():
    rng = np.random.default_rng(11)
    for _ in range(30):
        g = random_node_graph(rng, int(rng.integers(3, 11)), float(rng.uniform(0.2, 0.8)))
        tables = adjacency_tables(g)
        for t in tables:
            assert t.owner == t.entries[0]
            assert t.entries == tuple(sorted(t.entries))
        covered = {
            (t.owner, v) for t in tables for v in t.entries[1:]
        }
        # owner-to-entry pairs are real edges, and dropping a table only
        # happens when a lower-indexed table already contains all its pairs
        assert covered <= set(g.edges)
        for a, b in g.edges:
            assert any(
                a in t.entries and b in t.entries for t in tables
            ), f"edge ({a},{b}) not covered"


def test_fap_node_validation():
    with pytest.raises(ValueError):
        _node(0, 0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        _node(1, 0.0, 0.0, 0.0)


def test_scenario_graph_end_to_end(two_fap_scenario):
    g = build_node_graph(two_fap_scenario.faps, 50.0, 0.0)
    assert g.edges == frozenset({(1, 2)})
