"""Shared helpers: hand-built scenarios and random graphs for property tests."""

import numpy as np
import pytest

from fogcache.nodegraph import FapNode, NodeGraph
from fogcache.popularity import Catalog, PopularityVector
from fogcache.scenario import Scenario


def make_scenario(pops, rates, positions=None, file_size_bits=1.0):
    """Scenario from explicit popularity rows and request rates.

    Positions default to a line with 10 m spacing so every pair is within
    any reasonable distance threshold; pass explicit positions to control
    the feasibility graph geometry.
    """
    pops = [np.asarray(p, dtype=float) for p in pops]
    if positions is None:
        positions = [(10.0 * i, 0.0) for i in range(len(pops))]
    width = max(x for x, _ in positions) + 1.0
    height = max(y for _, y in positions) + 1.0
    catalog = Catalog(file_count=len(pops[0]), file_size_bits=file_size_bits)
    faps = tuple(
        FapNode(
            id=i + 1,
            position=(float(x), float(y)),
            rate=float(r),
            local_pop=PopularityVector(p),
        )
        for i, ((x, y), r, p) in enumerate(zip(positions, rates, pops))
    )
    return Scenario(
        catalog=catalog,
        region=(width, height),
        faps=faps,
        seed=0,
        zipf_z=0.0,
        het_swaps=0,
        lambda_range=(min(rates), max(rates)),
    )


def random_node_graph(rng, num_vertices, density):
    edges = {
        (a, b)
        for a in range(1, num_vertices + 1)
        for b in range(a + 1, num_vertices + 1)
        if rng.random() < density
    }
    return NodeGraph.from_edges(num_vertices, edges)


@pytest.fixture
def two_fap_scenario():
    # Anti-correlated demand: pooling the caches doubles the covered mass.
    return make_scenario(
        pops=[(0.4, 0.3, 0.2, 0.1), (0.1, 0.2, 0.3, 0.4)],
        rates=[1.0, 1.0],
    )
