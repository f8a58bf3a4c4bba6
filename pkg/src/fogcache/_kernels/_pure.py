"""Pure-Python combinatorial kernels.

Vertex sets are bitmasks in arbitrary-width Python ints, so these routines
work for any graph size.  The compiled backend in ``_fast`` implements the
same contracts with identical tie-breaking; outputs must match bit for bit.
"""

from __future__ import annotations

from typing import Sequence


def _canonical_cliques(emitted: set[int], neighbor_masks: Sequence[int]) -> list[int]:
    # emitted masks are cliques; keep those with >= 2 vertices that no
    # outside vertex extends (vertices are never their own neighbors, so the
    # common-neighbor intersection covers outside vertices only)
    keep: list[int] = []
    for mask in emitted:
        if mask.bit_count() < 2:
            continue
        common = -1
        rest = mask
        while rest:
            v = (rest & -rest).bit_length() - 1
            common &= neighbor_masks[v]
            rest &= rest - 1
        if common == 0:
            keep.append(mask)
    keep.sort()
    return keep


def maximal_clique_masks(
    num_vertices: int, neighbor_masks: Sequence[int], table_masks: Sequence[int]
) -> list[int]:
    """Maximal cliques (>= 2 vertices) via worklist splitting of the tables.

    Each seed table is split on its lowest vertex j that has a non-neighbor
    inside the table: one branch drops j, the other keeps j and drops j's
    non-neighbors.  Fully adjacent tables are collected; the final output is
    deduplicated, filtered to maximal sets, and sorted ascending by mask.
    """
    closed = [neighbor_masks[v] | (1 << v) for v in range(num_vertices)]
    emitted: set[int] = set()
    seen: set[int] = set()
    stack: list[int] = []
    for start in table_masks:
        if start not in seen:
            seen.add(start)
            stack.append(start)
    while stack:
        table = stack.pop()
        rest = table
        conflict = -1
        while rest:
            v = (rest & -rest).bit_length() - 1
            if table & ~closed[v]:
                conflict = v
                break
            rest &= rest - 1
        if conflict < 0:
            emitted.add(table)
            continue
        without = table & ~(1 << conflict)
        with_v = table & closed[conflict]
        for branch in (without, with_v):
            if branch not in seen:
                seen.add(branch)
                stack.append(branch)
    return _canonical_cliques(emitted, neighbor_masks)


def greedy_restart_mwis(
    conflict_masks: Sequence[int], weights: Sequence[float]
) -> tuple[list[int], float]:
    """Restart greedy for max-weight independent set on the conflict graph.

    One greedy run per starting vertex: seed the set with it, then repeatedly
    take the heaviest surviving vertex (ties by lowest index) and delete its
    neighbors.  The first run reaching the best total wins.  Masks exclude
    the self bit; weights must be non-negative.
    """
    n = len(weights)
    if n == 0:
        return [], 0.0
    for w in weights:
        if w < 0:
            raise ValueError(f"negative weight {w!r}")
    closed = [conflict_masks[v] | (1 << v) for v in range(n)]
    order = sorted(range(n), key=lambda i: (-weights[i], i))
    full = (1 << n) - 1
    best_total = -1.0
    best_mask = 0
    for start in range(n):
        alive = full & ~closed[start]
        chosen = 1 << start
        total = weights[start]
        for v in order:
            if alive >> v & 1:
                chosen |= 1 << v
                total += weights[v]
                alive &= ~closed[v]
        if total > best_total:
            best_total = total
            best_mask = chosen
    picks = [v for v in range(n) if best_mask >> v & 1]
    return picks, best_total
