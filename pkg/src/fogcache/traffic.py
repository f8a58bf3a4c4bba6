"""Offloaded-traffic accounting for cooperative caching.

Every request served from an edge cache is traffic kept off the backhaul.
A standalone node offloads its arrival rate times the probability mass of
its top-K local files; a cluster pools storage and offloads the joint
arrival rate times the top-K_n mass of the cluster popularity.  The gain of
forming a cluster over leaving its members standalone is the "incremental"
traffic, and the whole offloaded traffic decomposes as

    whole = incremental + sum of standalone per-node traffic,

which this module re-verifies against the direct per-cluster route on every
report it builds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvariantViolation
from .popularity import Catalog, LoadWeights, PopularityVector, cluster_popularity

IDENTITY_REL_TOL = 1e-9


@dataclass(frozen=True)
class CacheBudget:
    """Per-node cache size ``k`` plus the cluster-capacity policy.

    ``kn_fixed`` = None selects full diversity: a cluster of size S caches
    min(S*k, F) distinct files, the maximum the pooled storage allows.  A
    fixed value v must satisfy k <= v <= min(S*k, F) for every cluster it is
    applied to.
    """

    k: int
    kn_fixed: int | None = None

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"cache size k must be >= 1, got {self.k}")
        if self.kn_fixed is not None and self.kn_fixed < self.k:
            raise ValueError(
                f"fixed cluster capacity {self.kn_fixed} is below the per-node size {self.k}"
            )

    def cluster_capacity(self, cluster_size: int, file_count: int) -> int:
        """Distinct-file capacity K_n for a cluster of ``cluster_size`` nodes."""
        if self.k > file_count:
            raise ValueError(f"cache size {self.k} exceeds catalog size {file_count}")
        cap = min(cluster_size * self.k, file_count)
        if self.kn_fixed is None:
            return cap
        if not self.k <= self.kn_fixed <= cap:
            raise ValueError(
                f"fixed cluster capacity {self.kn_fixed} outside [{self.k}, {cap}] "
                f"for a cluster of {cluster_size} nodes"
            )
        return self.kn_fixed


@dataclass(frozen=True, eq=False)
class TrafficReport:
    """Offloaded-traffic breakdown for one clustering of the node set.

    per_node holds each node's standalone top-k traffic; per_cluster the
    clusters' pooled traffic; ``incremental`` the clustering gain and
    ``whole`` the total offloaded traffic.  The decomposition identity
    whole = incremental + sum(per_node) is validated on construction.
    For reconstructed baseline strategies ``incremental`` may be negative
    (they can lose to standalone top-k caching); per-node, per-cluster and
    whole entries are always non-negative.
    """

    per_node: tuple[float, ...]
    per_cluster: tuple[float, ...]
    incremental: float
    whole: float

    def __post_init__(self) -> None:
        if any(t < 0 for t in self.per_node) or any(t < 0 for t in self.per_cluster):
            raise ValueError("offloaded traffic entries must be non-negative")
        if self.whole < 0:
            raise ValueError("whole offloaded traffic must be non-negative")
        expected = self.incremental + sum(self.per_node)
        if not math.isclose(self.whole, expected, rel_tol=IDENTITY_REL_TOL, abs_tol=1e-9):
            raise InvariantViolation(
                f"traffic decomposition broken: whole={self.whole!r} but "
                f"incremental + sum(per_node) = {expected!r}"
            )

    @property
    def standalone_total(self) -> float:
        return sum(self.per_node)


def offloaded_traffic_fap(
    rate: float, local: PopularityVector, k: int, file_size_bits: float
) -> float:
    """Average offloaded traffic of one standalone node caching its top-k files."""
    if not 1 <= k <= len(local):
        raise ValueError(f"k must be in 1..{len(local)}, got {k}")
    if rate < 0:
        raise ValueError(f"request rate must be >= 0, got {rate}")
    return rate * file_size_bits * local.top_mass(k)


def offloaded_traffic_cluster(
    members: Iterable[int],
    locals_: Sequence[PopularityVector],
    loads: LoadWeights,
    kn: int,
    k: int,
    file_size_bits: float,
) -> float:
    """Average offloaded traffic of a cluster caching kn distinct files."""
    ids = tuple(sorted(set(members)))
    if not ids:
        raise ValueError("member set must be non-empty")
    file_count = len(locals_[ids[0] - 1])
    cap = min(len(ids) * k, file_count)
    if not k <= kn <= cap:
        raise ValueError(f"cluster capacity {kn} outside [{k}, {cap}]")
    pooled = cluster_popularity(ids, locals_, loads)
    joint_rate = float(sum(loads.rates[m - 1] for m in ids))
    return joint_rate * file_size_bits * pooled.top_mass(kn)


def incremental_traffic(
    members: Iterable[int],
    locals_: Sequence[PopularityVector],
    loads: LoadWeights,
    budget: CacheBudget,
    file_size_bits: float,
) -> float:
    """Clustering gain: pooled traffic minus the members' standalone traffic.

    Evaluated per member as rate * (top-K_n pooled mass - top-k local mass),
    which is exactly zero for a one-node cluster at K_n = k.
    """
    ids = tuple(sorted(set(members)))
    if not ids:
        raise ValueError("member set must be non-empty")
    file_count = len(locals_[ids[0] - 1])
    kn = budget.cluster_capacity(len(ids), file_count)
    pooled = cluster_popularity(ids, locals_, loads)
    pooled_mass = pooled.top_mass(kn)
    gain = 0.0
    for m in ids:
        local_mass = locals_[m - 1].top_mass(budget.k)
        gain += float(loads.rates[m - 1]) * (pooled_mass - local_mass) * file_size_bits
    return gain


def _check_disjoint(clusters: Sequence[Sequence[int]], num_nodes: int) -> tuple[int, ...]:
    seen: set[int] = set()
    for members in clusters:
        for m in members:
            if not 1 <= m <= num_nodes:
                raise ValueError(f"member id {m} outside 1..{num_nodes}")
            if m in seen:
                raise ValueError(f"clusters overlap: node {m} appears twice")
            seen.add(m)
    return tuple(m for m in range(1, num_nodes + 1) if m not in seen)


def whole_traffic(
    clusters: Sequence[Sequence[int]],
    locals_: Sequence[PopularityVector],
    loads: LoadWeights,
    catalog: Catalog,
    budget: CacheBudget,
) -> TrafficReport:
    """Full traffic report for disjoint clusters over the node set.

    The whole traffic is assembled from the decomposition (incremental plus
    all standalone traffic) and cross-checked against the direct route
    (cluster traffic plus nonclustered standalone traffic); disagreement
    beyond 1e-9 relative raises InvariantViolation.
    """
    num_nodes = len(locals_)
    nonclustered = _check_disjoint(clusters, num_nodes)
    bits = catalog.file_size_bits
    per_node = tuple(
        offloaded_traffic_fap(float(loads.rates[m - 1]), locals_[m - 1], budget.k, bits)
        for m in range(1, num_nodes + 1)
    )
    per_cluster = []
    incremental = 0.0
    for members in clusters:
        kn = budget.cluster_capacity(len(set(members)), catalog.file_count)
        per_cluster.append(
            offloaded_traffic_cluster(members, locals_, loads, kn, budget.k, bits)
        )
        incremental += incremental_traffic(members, locals_, loads, budget, bits)
    whole = incremental + sum(per_node)
    direct = sum(per_cluster) + sum(per_node[m - 1] for m in nonclustered)
    if not math.isclose(whole, direct, rel_tol=IDENTITY_REL_TOL, abs_tol=1e-9):
        raise InvariantViolation(
            f"decomposition route gives {whole!r} but per-cluster route gives {direct!r}"
        )
    return TrafficReport(
        per_node=per_node,
        per_cluster=tuple(per_cluster),
        incremental=incremental,
        whole=whole,
    )


def cluster_file_assignment(
    members: Sequence[int], pooled: PopularityVector, kn: int
) -> dict[int, tuple[int, ...]]:
    """Round-robin assignment of the kn most popular files to members.

    Files are dealt in descending pooled popularity (ties by ascending file
    id) over the members sorted by id, so each member stores at most
    ceil(kn / len(members)) files.  The assignment does not change any
    traffic value; it only reports which node would physically hold what.
    """
    ids = sorted(set(members))
    files = pooled.top_files(kn)
    assignment: dict[int, list[int]] = {m: [] for m in ids}
    for rank, file_id in enumerate(files):
        assignment[ids[rank % len(ids)]].append(file_id)
    return {m: tuple(v) for m, v in assignment.items()}
