"""Cluster selection as max-weight independent set.

Candidate clusters that share a node cannot both be chosen, so candidates
form a conflict graph: one vertex per candidate, an edge between every
intersecting pair, and vertex weight equal to the candidate's incremental
offloaded traffic.  Choosing the best disjoint clusters is then exactly the
max-weight independent set problem on that graph.  A restart-greedy solver
handles production sizes, an exact branch-and-bound oracle pins its quality
on small instances, and ``solve`` runs the whole pipeline from a scenario.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from . import _kernels
from .cliques import VertexSet, all_complete_subgraphs, maximal_cliques
from .errors import InvariantViolation
from .nodegraph import build_node_graph
from .traffic import CacheBudget, TrafficReport, incremental_traffic, whole_traffic

if TYPE_CHECKING:
    from .scenario import Scenario

OBJECTIVE_REL_TOL = 1e-9
EXACT_GUARD_DEFAULT = 25

SOLVER_GREEDY = "greedy"
SOLVER_EXACT = "exact"


@dataclass(frozen=True)
class CandidateCluster:
    """A feasible cooperation cluster: its members (a clique of the node
    graph), its distinct-file capacity, and its incremental-traffic weight."""

    members: VertexSet
    kn: int
    weight: float

    def __post_init__(self) -> None:
        if len(self.members) < 2:
            raise ValueError(f"cluster {self.members} needs at least 2 members")
        if list(self.members) != sorted(set(self.members)):
            raise ValueError(f"cluster members {self.members} not in canonical sorted form")
        if self.kn < 1:
            raise ValueError(f"cluster capacity must be >= 1, got {self.kn}")
        if not math.isfinite(self.weight):
            raise ValueError(f"cluster weight must be finite, got {self.weight}")


def _conflict_masks(member_sets: Sequence[VertexSet], num_faps: int) -> tuple[int, ...]:
    """Bitmask adjacency of the conflict graph: bit j of mask i is set iff
    candidates i and j (i != j) share at least one node.  Computed blockwise
    as a boolean membership-matrix product to stay in vectorized code."""
    n = len(member_sets)
    if n == 0:
        return ()
    memb = np.zeros((n, num_faps), dtype=np.int32)
    for i, members in enumerate(member_sets):
        for v in members:
            memb[i, v - 1] = 1
    masks: list[int] = []
    block = 512
    for lo in range(0, n, block):
        shared = memb[lo : lo + block] @ memb.T > 0
        packed = np.packbits(shared, axis=1, bitorder="little")
        for r in range(shared.shape[0]):
            mask = int.from_bytes(packed[r].tobytes(), "little")
            masks.append(mask & ~(1 << (lo + r)))
    return tuple(masks)


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Conflict graph over candidate clusters.

    vertices are in canonical order (sorted by member tuple); conflict_masks
    give each vertex's intersecting peers as a bitmask with the self bit
    cleared.  num_faps is carried so solutions can name the leftover nodes.
    """

    vertices: tuple[CandidateCluster, ...]
    num_faps: int
    conflict_masks: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        members = [c.members for c in self.vertices]
        if members != sorted(members):
            raise ValueError("vertices must be sorted by member tuple")
        if len(set(members)) != len(members):
            raise ValueError("duplicate candidate clusters")
        for c in self.vertices:
            if c.members and c.members[-1] > self.num_faps:
                raise ValueError(f"cluster {c.members} references node > {self.num_faps}")
        object.__setattr__(self, "conflict_masks", _conflict_masks(members, self.num_faps))

    @cached_property
    def weights(self) -> tuple[float, ...]:
        return tuple(c.weight for c in self.vertices)

    @cached_property
    def conflicts(self) -> frozenset[tuple[int, int]]:
        """Unordered conflicting index pairs, materialized from the masks."""
        pairs = set()
        for i, mask in enumerate(self.conflict_masks):
            m = mask >> (i + 1) << (i + 1)  # keep j > i only
            while m:
                j = (m & -m).bit_length() - 1
                pairs.add((i, j))
                m &= m - 1
        return frozenset(pairs)


@dataclass(frozen=True, eq=False)
class ClusteringSolution:
    """Chosen disjoint clusters plus everything needed to report them.

    x is the 0/1 indicator over the candidate list in canonical order; the
    objective is the total weight of the chosen clusters.  traffic and
    num_maximal are attached by ``solve``; solver entry points leave them
    unset.
    """

    clusters: tuple[CandidateCluster, ...]
    nonclustered: VertexSet
    x: tuple[int, ...]
    objective: float
    traffic: TrafficReport | None = None
    num_maximal: int | None = None

    def __post_init__(self) -> None:
        if any(bit not in (0, 1) for bit in self.x):
            raise InvariantViolation(f"indicator vector must be 0/1, got {self.x}")
        if sum(self.x) != len(self.clusters):
            raise InvariantViolation(
                f"indicator selects {sum(self.x)} vertices but {len(self.clusters)} clusters given"
            )
        seen: set[int] = set()
        for c in self.clusters:
            overlap = seen.intersection(c.members)
            if overlap:
                raise InvariantViolation(f"chosen clusters overlap on nodes {sorted(overlap)}")
            seen.update(c.members)
        if seen.intersection(self.nonclustered):
            raise InvariantViolation("nonclustered set intersects a chosen cluster")
        total = math.fsum(c.weight for c in self.clusters)
        if not math.isclose(self.objective, total, rel_tol=OBJECTIVE_REL_TOL, abs_tol=1e-9):
            raise InvariantViolation(
                f"objective {self.objective!r} != sum of chosen weights {total!r}"
            )

    @property
    def num_candidates(self) -> int:
        return len(self.x)


def build_weighted_graph(
    candidates: Iterable[VertexSet], scenario: "Scenario", budget: CacheBudget
) -> WeightedGraph:
    """Weight every candidate by its incremental traffic and wire conflicts.

    Full-diversity weights are nonnegative by derivation, but the top-mass
    sums behind them carry float rounding that the file size amplifies, so a
    value within a relative rounding band below zero snaps to exactly 0.0.
    Larger negatives (possible under a fixed pooled budget) pass through and
    are rejected later by the solvers.
    """
    locals_ = scenario.local_pops()
    loads = scenario.load_weights()
    bits = scenario.catalog.file_size_bits
    file_count = scenario.catalog.file_count
    vertices = []
    for members in sorted(candidates):
        kn = budget.cluster_capacity(len(members), file_count)
        w = incremental_traffic(members, locals_, loads, budget, bits)
        # band scales with the cluster's pooled traffic magnitude
        band = 1e-9 * bits * math.fsum(loads.rates[m - 1] for m in members)
        if -band <= w < 0.0:
            w = 0.0
        vertices.append(CandidateCluster(members=members, kn=kn, weight=w))
    return WeightedGraph(vertices=tuple(vertices), num_faps=len(scenario.faps))


def _solution_from_picks(g: WeightedGraph, picks: Sequence[int], objective: float | None = None) -> ClusteringSolution:
    pick_set = set(picks)
    chosen = tuple(g.vertices[i] for i in sorted(pick_set))
    x = tuple(1 if i in pick_set else 0 for i in range(len(g.vertices)))
    covered = {m for c in chosen for m in c.members}
    nonclustered = tuple(v for v in range(1, g.num_faps + 1) if v not in covered)
    total = math.fsum(c.weight for c in chosen) if objective is None else objective
    return ClusteringSolution(clusters=chosen, nonclustered=nonclustered, x=x, objective=total)


def greedy_mwis(g: WeightedGraph) -> ClusteringSolution:
    """Restart greedy: one run seeded from every vertex, best run wins.

    Each run adds the seed, then repeatedly the heaviest surviving vertex
    (ties by lowest index), deleting neighbors as it goes.  Runs are scored
    on private state; the earliest best-scoring run is kept.  The reported
    objective is recomputed with exact summation over the chosen weights.
    """
    for w in g.weights:
        if w < 0:
            raise ValueError(f"negative cluster weight {w!r}")
    if not g.vertices:
        return _solution_from_picks(g, [])
    picks, _ = _kernels.greedy_restart_mwis(g.conflict_masks, g.weights)
    return _solution_from_picks(g, picks)


def _sum_alive(weights: Sequence[float], mask: int) -> float:
    total = 0.0
    while mask:
        v = (mask & -mask).bit_length() - 1
        total += weights[v]
        mask &= mask - 1
    return total


def exact_mwis(g: WeightedGraph, guard: int = EXACT_GUARD_DEFAULT) -> ClusteringSolution:
    """Exact oracle: branch and bound over all feasible indicator vectors.

    Phase 1 finds the optimal total weight using a heaviest-first search
    with a sum-of-remaining-weights bound; candidate totals are scored with
    exact summation so the optimum is order-independent.  Phase 2 re-walks
    the vertices in canonical index order, 0-branch first, and returns the
    first (hence lexicographically smallest) indicator that reproduces the
    optimal total bit for bit.  Pruning keeps a safety margin far above
    float error so no optimal branch is ever cut.
    """
    n = len(g.vertices)
    if n > guard:
        raise ValueError(f"exact solver is capped at {guard} vertices, got {n}")
    for w in g.weights:
        if w < 0:
            raise ValueError(f"negative cluster weight {w!r}")
    if n == 0:
        return _solution_from_picks(g, [])
    weights = g.weights
    closed = [g.conflict_masks[i] | (1 << i) for i in range(n)]
    order = sorted(range(n), key=lambda i: (-weights[i], i))
    margin = 1e-9 * math.fsum(weights)

    best = -math.inf

    def search(pos: int, alive: int, chosen: tuple[int, ...], running: float) -> None:
        nonlocal best
        while pos < n and not alive >> order[pos] & 1:
            pos += 1
        if pos == n:
            total = math.fsum(weights[i] for i in chosen)
            if total > best:
                best = total
            return
        if running + _sum_alive(weights, alive) <= best - margin:
            return
        v = order[pos]
        search(pos + 1, alive & ~closed[v], chosen + (v,), running + weights[v])
        search(pos + 1, alive & ~(1 << v), chosen, running)

    search(0, (1 << n) - 1, (), 0.0)
    target = best

    found: tuple[int, ...] | None = None

    def lex_walk(i: int, alive: int, chosen: tuple[int, ...], running: float) -> bool:
        nonlocal found
        if i == n:
            if math.fsum(weights[j] for j in chosen) == target:
                found = chosen
                return True
            return False
        high = alive >> i << i  # undecided vertices still available
        if running + _sum_alive(weights, high) < target - margin:
            return False
        if lex_walk(i + 1, alive & ~(1 << i), chosen, running):
            return True
        if alive >> i & 1:
            return lex_walk(i + 1, alive & ~closed[i], chosen + (i,), running + weights[i])
        return False

    if not lex_walk(0, (1 << n) - 1, (), 0.0):
        raise InvariantViolation(f"no indicator reproduces the optimal total {target!r}")
    return _solution_from_picks(g, found, objective=target)


def solve(
    scenario: "Scenario",
    budget: CacheBudget,
    gamma_d: float,
    gamma_l: float,
    solver: str = SOLVER_GREEDY,
    max_cluster_size: int | None = None,
    exact_guard: int = EXACT_GUARD_DEFAULT,
) -> ClusteringSolution:
    """Full pipeline: feasibility graph, candidate clusters, conflict graph,
    chosen solver, and the final traffic report."""
    if solver not in (SOLVER_GREEDY, SOLVER_EXACT):
        raise ValueError(f"unknown solver {solver!r}, expected 'greedy' or 'exact'")
    graph = build_node_graph(scenario.faps, gamma_d, gamma_l)
    maximal = maximal_cliques(graph)
    candidates = all_complete_subgraphs(maximal, max_cluster_size)
    weighted = build_weighted_graph(candidates, scenario, budget)
    if solver == SOLVER_GREEDY:
        solution = greedy_mwis(weighted)
    else:
        solution = exact_mwis(weighted, guard=exact_guard)
    report = whole_traffic(
        [c.members for c in solution.clusters],
        scenario.local_pops(),
        scenario.load_weights(),
        scenario.catalog,
        budget,
    )
    # abs_tol tracks the traffic scale: clamped rounding-band weights may
    # shift a near-zero objective by more than a fixed 1e-9
    if not math.isclose(
        solution.objective,
        report.incremental,
        rel_tol=OBJECTIVE_REL_TOL,
        abs_tol=OBJECTIVE_REL_TOL * max(report.whole, 1.0),
    ):
        raise InvariantViolation(
            f"solver objective {solution.objective!r} disagrees with the traffic "
            f"report's incremental total {report.incremental!r}"
        )
    return replace(solution, traffic=report, num_maximal=len(maximal))
