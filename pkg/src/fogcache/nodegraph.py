"""Feasibility graph over edge nodes.

Two nodes may cooperate when they are close enough (Euclidean distance at
or below the distance threshold) and their request loads differ enough
(absolute rate difference at or above the load threshold).  Both bounds are
non-strict, and a load threshold of 0 disables the load criterion.  The
graph is stored with per-vertex neighbor bitmasks (arbitrary-width Python
ints), giving constant-time adjacency tests for the small dense graphs the
clique search operates on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .popularity import PopularityVector


@dataclass(frozen=True)
class FapNode:
    """One edge node: id (1-based), planar position in meters, request rate
    in requests/s, and its local popularity vector."""

    id: int
    position: tuple[float, float]
    rate: float
    local_pop: PopularityVector

    def __post_init__(self) -> None:
        if self.id < 1:
            raise ValueError(f"node ids are 1-based, got {self.id}")
        if not self.rate > 0:
            raise ValueError(f"request rate must be positive, got {self.rate}")
        object.__setattr__(self, "position", (float(self.position[0]), float(self.position[1])))


@dataclass(frozen=True, eq=False)
class NodeGraph:
    """Feasibility graph: vertices 1..num_vertices, undirected edge set,
    and the thresholds that produced it (None for synthetic graphs)."""

    num_vertices: int
    edges: frozenset[tuple[int, int]]
    distance_threshold: float | None = None
    load_threshold: float | None = None
    neighbor_masks: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        masks = [0] * (self.num_vertices + 1)  # index 0 unused
        canonical = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop on vertex {a}")
            if not (1 <= a <= self.num_vertices and 1 <= b <= self.num_vertices):
                raise ValueError(f"edge ({a},{b}) outside 1..{self.num_vertices}")
            lo, hi = (a, b) if a < b else (b, a)
            canonical.add((lo, hi))
            masks[a] |= 1 << (b - 1)
            masks[b] |= 1 << (a - 1)
        object.__setattr__(self, "edges", frozenset(canonical))
        object.__setattr__(self, "neighbor_masks", tuple(masks))

    @classmethod
    def from_edges(cls, num_vertices: int, edges: Iterable[tuple[int, int]]) -> "NodeGraph":
        return cls(num_vertices=num_vertices, edges=frozenset(tuple(e) for e in edges))

    def adjacent(self, a: int, b: int) -> bool:
        return bool(self.neighbor_masks[a] >> (b - 1) & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        mask = self.neighbor_masks[v]
        return tuple(i + 1 for i in range(self.num_vertices) if mask >> i & 1)


@dataclass(frozen=True)
class AdjacencyTable:
    """A vertex together with its higher-indexed neighbors, sorted ascending."""

    owner: int
    entries: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.entries)


def pairwise_metrics(a: FapNode, b: FapNode) -> tuple[float, float]:
    """Euclidean distance between positions and absolute request-rate difference."""
    if a.id == b.id:
        raise ValueError("pairwise metrics need two distinct nodes")
    dist = math.hypot(a.position[0] - b.position[0], a.position[1] - b.position[1])
    return dist, abs(a.rate - b.rate)


def build_node_graph(
    faps: Sequence[FapNode], distance_threshold: float, load_threshold: float
) -> NodeGraph:
    """Connect every node pair within the distance bound and at or above the
    load-difference bound.  Node ids must be exactly 1..M."""
    if not faps:
        raise ValueError("need at least one node")
    if distance_threshold < 0 or load_threshold < 0:
        raise ValueError("thresholds must be non-negative")
    ids = sorted(f.id for f in faps)
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate node ids")
    if ids != list(range(1, len(faps) + 1)):
        raise ValueError(f"node ids must be contiguous 1..{len(faps)}, got {ids}")
    by_id = {f.id: f for f in faps}
    edges = set()
    for i in range(1, len(faps) + 1):
        for j in range(i + 1, len(faps) + 1):
            dist, load_diff = pairwise_metrics(by_id[i], by_id[j])
            if dist <= distance_threshold and load_diff >= load_threshold:
                edges.add((i, j))
    return NodeGraph(
        num_vertices=len(faps),
        edges=frozenset(edges),
        distance_threshold=distance_threshold,
        load_threshold=load_threshold,
    )


def adjacency_tables(g: NodeGraph) -> list[AdjacencyTable]:
    """Per-vertex forward tables, pruned and ordered for the clique search.

    The table of vertex m holds m and its higher-indexed neighbors.  Tables
    of size 1 and tables contained in any lower-indexed vertex's table are
    redundant (no maximal clique can have its minimum vertex there) and are
    dropped.  Survivors are sorted by size descending, ties by owner id.
    """
    raw: list[tuple[int, frozenset[int]]] = []
    for m in range(1, g.num_vertices + 1):
        fwd = {m} | {n for n in g.neighbors(m) if n > m}
        raw.append((m, frozenset(fwd)))
    surviving = []
    for idx, (m, table) in enumerate(raw):
        if len(table) == 1:
            continue
        if any(table <= earlier for _, earlier in raw[: idx]):
            continue
        surviving.append(AdjacencyTable(owner=m, entries=tuple(sorted(table))))
    surviving.sort(key=lambda t: (-t.size, t.owner))
    return surviving
