"""Benchmark the compiled kernels against the pure-Python fallback.

Times the maximal-clique search and the restart-greedy selection on random
feasibility graphs of growing size, runs both backends on identical inputs,
and checks their outputs match exactly.  Run from the repository root:

    python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

import numpy as np

from fogcache._kernels import _pure
from fogcache.cliques import _vertices_to_mask
from fogcache.nodegraph import NodeGraph, adjacency_tables

try:
    from fogcache._kernels import _fast
except ImportError:
    _fast = None


def random_graph(num_vertices: int, density: float, seed: int) -> NodeGraph:
    rng = np.random.default_rng(seed)
    edges = {
        (a, b)
        for a in range(1, num_vertices + 1)
        for b in range(a + 1, num_vertices + 1)
        if rng.random() < density
    }
    return NodeGraph.from_edges(num_vertices, edges)


def clique_inputs(g: NodeGraph) -> tuple[int, list[int], list[int]]:
    tables = [_vertices_to_mask(t.entries) for t in adjacency_tables(g)]
    neighbors = [g.neighbor_masks[v + 1] for v in range(g.num_vertices)]
    return g.num_vertices, neighbors, tables


def conflict_instance(num_vertices: int, density: float, seed: int) -> tuple[list[int], list[float]]:
    rng = np.random.default_rng(seed)
    masks = [0] * num_vertices
    for i in range(num_vertices):
        for j in range(i + 1, num_vertices):
            if rng.random() < density:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    weights = [float(w) for w in rng.uniform(0.0, 10.0, num_vertices)]
    return masks, weights


def timed(fn, *args, repeat: int = 3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return result, best


def main() -> None:
    if _fast is None:
        print("compiled backend not importable; showing pure-Python times only")

    print("maximal-clique search (random graphs, density 0.5)")
    print(f"{'M':>4} {'pure ms':>10} {'fast ms':>10} {'speedup':>8}")
    for m in (13, 20, 30, 45, 60):
        num, neighbors, tables = clique_inputs(random_graph(m, 0.5, seed=m))
        pure_out, pure_t = timed(_pure.maximal_clique_masks, num, neighbors, tables)
        if _fast is not None:
            fast_out, fast_t = timed(_fast.maximal_clique_masks, num, neighbors, tables)
            assert fast_out == pure_out, f"backend mismatch at M={m}"
            print(f"{m:>4} {pure_t * 1e3:>10.3f} {fast_t * 1e3:>10.3f} {pure_t / fast_t:>7.1f}x")
        else:
            print(f"{m:>4} {pure_t * 1e3:>10.3f} {'-':>10} {'-':>8}")

    print()
    print("restart-greedy selection (random conflict graphs, density 0.3)")
    print(f"{'N':>4} {'pure ms':>10} {'fast ms':>10} {'speedup':>8}")
    for n in (50, 100, 200, 400, 800):
        masks, weights = conflict_instance(n, 0.3, seed=n)
        pure_out, pure_t = timed(_pure.greedy_restart_mwis, masks, weights)
        if _fast is not None:
            fast_out, fast_t = timed(_fast.greedy_restart_mwis, masks, weights)
            assert fast_out == pure_out, f"backend mismatch at N={n}"
            print(f"{n:>4} {pure_t * 1e3:>10.3f} {fast_t * 1e3:>10.3f} {pure_t / fast_t:>7.1f}x")
        else:
            print(f"{n:>4} {pure_t * 1e3:>10.3f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
