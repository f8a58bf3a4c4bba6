"""Candidate cooperation clusters as complete subgraphs.

A cooperation cluster must be pairwise feasible, so candidates are exactly
the complete subgraphs (cliques) of the feasibility graph with at least two
vertices.  The maximal cliques are found by a worklist search that splits
the pruned per-vertex adjacency tables on conflict vertices; every smaller
candidate is then a subset of some maximal clique.  A 2^M brute-force
enumeration serves as the independent oracle for the search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from . import _kernels
from .nodegraph import NodeGraph, adjacency_tables

# a VertexSet is a tuple of 1-based vertex ids, sorted ascending, no duplicates
VertexSet = tuple[int, ...]

BRUTE_FORCE_MAX_VERTICES = 20


def _vertices_to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


def _mask_to_vertices(mask: int) -> VertexSet:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask &= mask - 1
    return tuple(out)


def maximal_cliques(g: NodeGraph) -> frozenset[VertexSet]:
    """All maximal cliques of g that contain at least one edge.

    Seeds a worklist with the pruned adjacency tables.  A working table
    whose vertices are pairwise adjacent is collected; otherwise the lowest
    vertex j with a non-neighbor inside the table forks it into the table
    without j and the table without j's non-neighbors.  Collected sets are
    deduplicated and filtered so only maximal ones remain.
    """
    table_masks = [_vertices_to_mask(t.entries) for t in adjacency_tables(g)]
    neighbor_masks = [g.neighbor_masks[v + 1] for v in range(g.num_vertices)]
    found = _kernels.maximal_clique_masks(g.num_vertices, neighbor_masks, table_masks)
    return frozenset(_mask_to_vertices(m) for m in found)


def brute_force_maximal_cliques(g: NodeGraph) -> frozenset[VertexSet]:
    """Oracle: enumerate all 2^M subsets, keep the maximal complete ones.

    Independent of the worklist search and of the adjacency tables; used to
    pin the semantics of maximal_cliques.  Refuses graphs with more than
    BRUTE_FORCE_MAX_VERTICES vertices.
    """
    m = g.num_vertices
    if m > BRUTE_FORCE_MAX_VERTICES:
        raise ValueError(f"brute force is capped at {BRUTE_FORCE_MAX_VERTICES} vertices, got {m}")
    neighbor = [g.neighbor_masks[v + 1] for v in range(m)]
    out = []
    for subset in range(3, 1 << m):
        if subset.bit_count() < 2:
            continue
        rest = subset
        complete = True
        common = -1
        while rest:
            v = (rest & -rest).bit_length() - 1
            if neighbor[v] & subset != subset & ~(1 << v):
                complete = False
                break
            common &= neighbor[v]
            rest &= rest - 1
        # members are never their own neighbors, so common holds only outside
        # vertices adjacent to the whole subset; any such vertex extends it
        if complete and common == 0:
            out.append(_mask_to_vertices(subset))
    return frozenset(out)


def all_complete_subgraphs(
    maximal: Iterable[VertexSet], max_cluster_size: int | None = None
) -> frozenset[VertexSet]:
    """Expand maximal cliques into the candidate-cluster set.

    Returns every subset of size >= 2 (and <= max_cluster_size when given)
    of every maximal clique, deduplicated into canonical sorted-tuple form.
    """
    out: set[VertexSet] = set()
    for clique in maximal:
        members = tuple(sorted(clique))
        top = len(members) if max_cluster_size is None else min(len(members), max_cluster_size)
        for size in range(2, top + 1):
            out.update(itertools.combinations(members, size))
    return frozenset(out)


@dataclass(frozen=True, eq=False)
class CliqueCatalog:
    """The maximal cliques of a feasibility graph together with their
    expansion into all candidate clusters (complete subgraphs, size >= 2)."""

    maximal: frozenset[VertexSet]
    all_cliques: frozenset[VertexSet]

    def __post_init__(self) -> None:
        for group in (self.maximal, self.all_cliques):
            for vs in group:
                if len(vs) < 2:
                    raise ValueError(f"clique {vs} has fewer than 2 vertices")
                if list(vs) != sorted(set(vs)):
                    raise ValueError(f"clique {vs} is not in canonical sorted form")
        for vs in self.all_cliques:
            member_set = set(vs)
            if not any(member_set <= set(mx) for mx in self.maximal):
                raise ValueError(f"clique {vs} is not contained in any maximal clique")


def build_clique_catalog(g: NodeGraph, max_cluster_size: int | None = None) -> CliqueCatalog:
    """Run the maximal-clique search on g and expand the candidates."""
    maximal = maximal_cliques(g)
    return CliqueCatalog(maximal=maximal, all_cliques=all_complete_subgraphs(maximal, max_cluster_size))
