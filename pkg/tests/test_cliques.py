"""Candidate-cluster enumeration: maximal cliques and their sub-cliques."""

from itertools import combinations

import numpy as np
import pytest

from fogcache.cliques import (
    BRUTE_FORCE_MAX_VERTICES,
    CliqueCatalog,
    all_complete_subgraphs,
    brute_force_maximal_cliques,
    build_clique_catalog,
    maximal_cliques,
)
from fogcache.nodegraph import NodeGraph

from conftest import random_node_graph


def test_four_cycle_maximal_cliques():
    g = NodeGraph.from_edges(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
    expected = frozenset({(1, 2), (1, 4), (2, 3), (3, 4)})
    assert maximal_cliques(g) == expected
    assert brute_force_maximal_cliques(g) == expected


def test_triangle_with_pendant():
    g = NodeGraph.from_edges(4, [(1, 2), (1, 3), (2, 3), (3, 4)])
    expected = frozenset({(1, 2, 3), (3, 4)})
    assert maximal_cliques(g) == expected
    assert brute_force_maximal_cliques(g) == expected


def test_complete_graph_single_maximal_clique():
    n = 6
    g = NodeGraph.from_edges(n, combinations(range(1, n + 1), 2))
    assert maximal_cliques(g) == frozenset({tuple(range(1, n + 1))})


def test_edgeless_graph_has_no_cliques():
    g = NodeGraph.from_edges(5, [])
    assert maximal_cliques(g) == frozenset()
    assert all_complete_subgraphs(frozenset()) == frozenset()


def test_isolated_vertices_are_ignored():
    g = NodeGraph.from_edges(6, [(2, 5)])
    assert maximal_cliques(g) == frozenset({(2, 5)})


def test_matches_brute_force_on_random_graphs():
    rng = np.random.default_rng(3)
    for _ in range(60):
        m = int(rng.integers(4, 13))
        g = random_node_graph(rng, m, float(rng.uniform(0.1, 0.9)))
        assert maximal_cliques(g) == brute_force_maximal_cliques(g)


def test_brute_force_guard():
    g = NodeGraph.from_edges(BRUTE_FORCE_MAX_VERTICES + 1, [(1, 2)])
    with pytest.raises(ValueError):
        brute_force_maximal_cliques(g)


def test_all_complete_subgraphs_of_k4():
    maximal = frozenset({(1, 2, 3, 4)})
    subs = all_complete_subgraphs(maximal)
    # C(4,2) + C(4,3) + C(4,4) member sets, singletons excluded
    assert len(subs) == 6 + 4 + 1
    assert (1, 3) in subs and (1, 2, 4) in subs and (1, 2, 3, 4) in subs
    assert (1,) not in subs


def test_all_complete_subgraphs_deduplicates_overlap():
    # two triangles sharing edge (2,3) contribute the shared pair once
    maximal = frozenset({(1, 2, 3), (2, 3, 4)})
    subs = all_complete_subgraphs(maximal)
    assert subs == frozenset(
        {(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (1, 2, 3), (2, 3, 4)}
    )


def test_all_complete_subgraphs_size_cap():
    maximal = frozenset({(1, 2, 3, 4)})
    subs = all_complete_subgraphs(maximal, max_cluster_size=2)
    assert subs == frozenset({(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)})
    # a cap below the minimum cluster size leaves nothing to propose
    assert all_complete_subgraphs(maximal, max_cluster_size=1) == frozenset()


def test_catalog_contains_every_candidate():
    rng = np.random.default_rng(17)
    for _ in range(20):
        g = random_node_graph(rng, int(rng.integers(4, 10)), float(rng.uniform(0.3, 0.8)))
        catalog = build_clique_catalog(g)
        assert catalog.maximal == maximal_cliques(g)
        for clique in catalog.all_cliques:
            assert len(clique) >= 2
            for a, b in combinations(clique, 2):
                assert g.adjacent(a, b)
        # every pair inside a maximal clique must be present
        for mc in catalog.maximal:
            for pair in combinations(mc, 2):
                assert pair in catalog.all_cliques


def test_catalog_validation():
    with pytest.raises(ValueError):
        CliqueCatalog(maximal=frozenset({(2, 1)}), all_cliques=frozenset({(2, 1)}))
    with pytest.raises(ValueError):
        CliqueCatalog(maximal=frozenset({(1,)}), all_cliques=frozenset({(1,)}))
    with pytest.raises(ValueError):
        # candidate not contained in any maximal clique
        CliqueCatalog(maximal=frozenset({(1, 2)}), all_cliques=frozenset({(1, 2), (3, 4)}))


def test_clique_output_is_canonical():
    g = NodeGraph.from_edges(5, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (3, 5)])
    for clique in maximal_cliques(g):
        assert clique == tuple(sorted(clique))
        assert len(set(clique)) == len(clique)
