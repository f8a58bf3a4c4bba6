"""Reference caching strategies.

Three points of comparison for the clustering optimizer: plain per-node
top-k caching, a diversity-first scheme that pools whole connected
components and ranks files by global popularity, and a hybrid that splits
each node's cache between locally popular files and a seeded uniform draw.
The latter two are reconstructions: the literature describes them only by
which popularity drives them, so exact numeric parity with any published
figure is out of scope.

Accounting convention: every report's per_node entries are the standard
standalone top-k traffic, whole is the strategy's actual offloaded traffic,
and incremental is their difference, which for reconstructions may be
negative (a strategy can lose to standalone top-k caching).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cliques import VertexSet
from .nodegraph import NodeGraph, build_node_graph
from .popularity import PopularityVector, cluster_popularity, global_popularity
from .scenario import Scenario
from .traffic import (
    CacheBudget,
    TrafficReport,
    cluster_file_assignment,
    offloaded_traffic_fap,
    whole_traffic,
)

# fixed stream tag so the hybrid baseline's draw never collides with the
# scenario generator's streams
_UL_STREAM = 0x756C


@dataclass(frozen=True, eq=False)
class Placement:
    """Which files each node physically stores, plus any grouping used."""

    per_fap_files: dict[int, tuple[int, ...]]
    clusters: tuple[VertexSet, ...] = ()

    def __post_init__(self) -> None:
        for fap_id, files in self.per_fap_files.items():
            if fap_id < 1:
                raise ValueError(f"node ids are 1-based, got {fap_id}")
            if list(files) != sorted(set(files)) or (files and files[0] < 1):
                raise ValueError(f"stored files for node {fap_id} must be sorted unique ids >= 1")


def _mass(pop: PopularityVector, files: Sequence[int]) -> float:
    """Probability mass of an explicit file set under one popularity vector."""
    return math.fsum(float(pop.probs[fid - 1]) for fid in files)


def _components(g: NodeGraph) -> list[VertexSet]:
    """Connected components, each sorted, listed by smallest member."""
    unvisited = set(range(1, g.num_vertices + 1))
    comps = []
    while unvisited:
        root = min(unvisited)
        unvisited.remove(root)
        comp = [root]
        frontier = [root]
        while frontier:
            v = frontier.pop()
            for nb in g.neighbors(v):
                if nb in unvisited:
                    unvisited.remove(nb)
                    comp.append(nb)
                    frontier.append(nb)
        comps.append(tuple(sorted(comp)))
    return sorted(comps)


def baseline_nocoop(scenario: Scenario, k: int) -> tuple[Placement, TrafficReport]:
    """Every node caches its own top-k files; no cooperation at all."""
    report = whole_traffic(
        [], scenario.local_pops(), scenario.load_weights(), scenario.catalog, CacheBudget(k=k)
    )
    per_fap = {
        fap.id: tuple(sorted(fap.local_pop.top_files(k))) for fap in scenario.faps
    }
    return Placement(per_fap_files=per_fap), report


def baseline_lcd(scenario: Scenario, k: int, gamma_d: float) -> tuple[Placement, TrafficReport]:
    """Diversity-first reconstruction driven by global popularity.

    Nodes within distance gamma_d are grouped by connected component; each
    component pools its storage to hold the globally most popular
    min(S*k, F) files, dealt round-robin across members.  Offloaded traffic
    of a component is its joint arrival rate times the component-popularity
    mass of that globally chosen file set.  Isolated nodes store the global
    top-k on their own.
    """
    catalog = scenario.catalog
    if not 1 <= k <= catalog.file_count:
        raise ValueError(f"k must be in 1..{catalog.file_count}, got {k}")
    locals_ = scenario.local_pops()
    loads = scenario.load_weights()
    bits = catalog.file_size_bits
    graph = build_node_graph(scenario.faps, gamma_d, 0.0)
    comps = _components(graph)
    global_pop = global_popularity(locals_, loads)

    per_fap: dict[int, tuple[int, ...]] = {}
    per_cluster: list[float] = []
    clusters: list[VertexSet] = []
    whole = 0.0
    for comp in comps:
        if len(comp) == 1:
            m = comp[0]
            files = global_pop.top_files(k)
            per_fap[m] = tuple(sorted(files))
            whole += float(loads.rates[m - 1]) * bits * _mass(locals_[m - 1], files)
            continue
        kn = min(len(comp) * k, catalog.file_count)
        files = global_pop.top_files(kn)
        pooled = cluster_popularity(comp, locals_, loads)
        joint_rate = float(sum(loads.rates[m - 1] for m in comp))
        traffic = joint_rate * bits * _mass(pooled, files)
        per_cluster.append(traffic)
        clusters.append(comp)
        whole += traffic
        for m, assigned in cluster_file_assignment(comp, global_pop, kn).items():
            per_fap[m] = tuple(sorted(assigned))

    per_node = tuple(
        offloaded_traffic_fap(float(loads.rates[m - 1]), locals_[m - 1], k, bits)
        for m in range(1, len(scenario.faps) + 1)
    )
    report = TrafficReport(
        per_node=per_node,
        per_cluster=tuple(per_cluster),
        incremental=whole - sum(per_node),
        whole=whole,
    )
    return Placement(per_fap_files=per_fap, clusters=tuple(clusters)), report


def baseline_ul(scenario: Scenario, k: int) -> tuple[Placement, TrafficReport]:
    """Hybrid reconstruction: half locally popular, half uniform filler.

    Each node stores its top ceil(k/2) local files and fills the remaining
    floor(k/2) slots by walking a fixed seeded permutation of the catalog,
    skipping files it already stores.  The permutation depends only on the
    scenario seed and the node id, so stored sets are nested as k grows and
    runs are reproducible.
    """
    catalog = scenario.catalog
    if not 1 <= k <= catalog.file_count:
        raise ValueError(f"k must be in 1..{catalog.file_count}, got {k}")
    loads = scenario.load_weights()
    bits = catalog.file_size_bits
    top_count = -(-k // 2)
    per_fap: dict[int, tuple[int, ...]] = {}
    whole = 0.0
    for fap in scenario.faps:
        stored = list(fap.local_pop.top_files(top_count))
        if len(stored) < k:
            skip = set(stored)
            rng = np.random.default_rng([scenario.seed, fap.id, _UL_STREAM])
            for file_id in rng.permutation(catalog.file_count) + 1:
                if len(stored) == k:
                    break
                if int(file_id) not in skip:
                    stored.append(int(file_id))
        files = tuple(sorted(stored))
        per_fap[fap.id] = files
        whole += fap.rate * bits * _mass(fap.local_pop, files)

    per_node = tuple(
        offloaded_traffic_fap(float(loads.rates[m - 1]), scenario.faps[m - 1].local_pop, k, bits)
        for m in range(1, len(scenario.faps) + 1)
    )
    report = TrafficReport(
        per_node=per_node,
        per_cluster=(),
        incremental=whole - sum(per_node),
        whole=whole,
    )
    return Placement(per_fap_files=per_fap), report
