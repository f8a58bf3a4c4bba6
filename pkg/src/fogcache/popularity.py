"""Content popularity distributions.

A catalog of F equally sized files is requested according to per-node
("local") popularity vectors.  The canonical generator is a Zipf law over
file ids; heterogeneous local popularity is modelled by permuting the Zipf
masses with a seeded sequence of random transpositions.  Cluster and global
popularity are load-weighted convex combinations of the member locals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

PROB_SUM_TOL = 1e-9


@dataclass(frozen=True)
class Catalog:
    """The file library: ``file_count`` files of ``file_size_bits`` bits each."""

    file_count: int
    file_size_bits: float

    def __post_init__(self) -> None:
        if self.file_count < 1:
            raise ValueError(f"file_count must be >= 1, got {self.file_count}")
        if not self.file_size_bits > 0:
            raise ValueError(f"file_size_bits must be > 0, got {self.file_size_bits}")


@dataclass(frozen=True, eq=False)
class PopularityVector:
    """Request probabilities indexed by file id (entry 0 is file 1).

    Entries are validated to lie in [0, 1] and sum to 1 within 1e-9.
    The backing array is made read-only so instances can be shared freely.
    """

    probs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.probs, dtype=np.float64)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("probs must be a non-empty 1-D sequence")
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise ValueError("popularity entries must lie in [0, 1]")
        total = float(arr.sum())
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ValueError(f"popularity entries sum to {total!r}, expected 1 within {PROB_SUM_TOL}")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "probs", arr)

    def __len__(self) -> int:
        return int(self.probs.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PopularityVector):
            return NotImplemented
        return np.array_equal(self.probs, other.probs)

    def __hash__(self) -> int:
        return hash(self.probs.tobytes())

    def top_mass(self, k: int) -> float:
        """Sum of the k largest entries (tie order does not affect the sum)."""
        if not 1 <= k <= len(self):
            raise ValueError(f"k must be in 1..{len(self)}, got {k}")
        part = np.partition(self.probs, len(self) - k)[len(self) - k:]
        return float(part.sum())

    def top_files(self, k: int) -> tuple[int, ...]:
        """The k most popular file ids, ties broken by ascending file id."""
        if not 1 <= k <= len(self):
            raise ValueError(f"k must be in 1..{len(self)}, got {k}")
        order = np.argsort(-self.probs, kind="stable")
        return tuple(int(i) + 1 for i in order[:k])


@dataclass(frozen=True, eq=False)
class LoadWeights:
    """Per-node request arrival rates and their normalized traffic shares."""

    rates: np.ndarray
    shares: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        rates = np.asarray(self.rates, dtype=np.float64)
        if rates.ndim != 1 or rates.size < 1:
            raise ValueError("rates must be a non-empty 1-D sequence")
        if np.any(rates <= 0.0):
            raise ValueError("request rates must be positive")
        rates = rates.copy()
        rates.flags.writeable = False
        shares = rates / rates.sum()
        shares.flags.writeable = False
        object.__setattr__(self, "rates", rates)
        object.__setattr__(self, "shares", shares)

    def __len__(self) -> int:
        return int(self.rates.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LoadWeights):
            return NotImplemented
        return np.array_equal(self.rates, other.rates)

    def __hash__(self) -> int:
        return hash(self.rates.tobytes())


def zipf_popularity(file_count: int, z: float) -> PopularityVector:
    """Zipf popularity over file ids: prob(f) = f^(-z) / sum_g g^(-z).

    File 1 is the most popular; z = 0 degenerates to uniform.
    """
    if file_count < 1:
        raise ValueError(f"file_count must be >= 1, got {file_count}")
    if z < 0:
        raise ValueError(f"z must be >= 0, got {z}")
    ranks = np.arange(1, file_count + 1, dtype=np.float64)
    weights = ranks ** (-float(z))
    return PopularityVector(weights / weights.sum())


def _transposed_permutation(file_count: int, swaps: int, seed: int) -> np.ndarray:
    """Identity permutation after ``swaps`` seeded uniform transpositions.

    Each transposition draws a distinct index pair (i, j): i uniform over
    0..F-1, then j uniform over the remaining F-1 indices.  This draw
    protocol is part of the reproducibility contract.
    """
    perm = np.arange(file_count)
    if file_count < 2:
        return perm
    rng = np.random.default_rng(seed)
    for _ in range(swaps):
        i = int(rng.integers(file_count))
        j = int(rng.integers(file_count - 1))
        if j >= i:
            j += 1
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def local_popularity(catalog: Catalog, z: float, swaps: int, rng_seed: int) -> PopularityVector:
    """Per-node popularity: Zipf masses reassigned by a seeded permutation.

    The permutation is the identity perturbed by ``swaps`` uniform random
    transpositions, so swaps = 0 reproduces the global Zipf ranking exactly
    and larger values give increasingly heterogeneous local rankings.
    """
    if swaps < 0:
        raise ValueError(f"swaps must be >= 0, got {swaps}")
    base = zipf_popularity(catalog.file_count, z)
    perm = _transposed_permutation(catalog.file_count, swaps, rng_seed)
    probs = np.empty(catalog.file_count)
    probs[perm] = base.probs
    return PopularityVector(probs)


def _member_vectors(
    members: Iterable[int],
    locals_: Sequence[PopularityVector] | Mapping[int, PopularityVector],
) -> tuple[tuple[int, ...], list[PopularityVector]]:
    ids = tuple(sorted(set(members)))
    if not ids:
        raise ValueError("member set must be non-empty")
    if isinstance(locals_, Mapping):
        vectors = [locals_[m] for m in ids]
    else:
        for m in ids:
            if not 1 <= m <= len(locals_):
                raise ValueError(f"member id {m} outside 1..{len(locals_)}")
        vectors = [locals_[m - 1] for m in ids]
    return ids, vectors


def cluster_popularity(
    members: Iterable[int],
    locals_: Sequence[PopularityVector] | Mapping[int, PopularityVector],
    loads: LoadWeights,
) -> PopularityVector:
    """Request probabilities within a cluster of nodes.

    The load-weighted convex combination of the members' local vectors,
    renormalized over the member subset: the share of node m among the
    members is w_m / sum of member shares.
    """
    ids, vectors = _member_vectors(members, locals_)
    shares = np.array([loads.shares[m - 1] for m in ids])
    shares = shares / shares.sum()
    probs = np.zeros(len(vectors[0]))
    for share, vec in zip(shares, vectors):
        probs += share * vec.probs
    if len(ids) == 1:
        # exact passthrough: a one-member cluster sees its own local vector
        return vectors[0]
    return PopularityVector(probs)


def global_popularity(locals_: Sequence[PopularityVector], loads: LoadWeights) -> PopularityVector:
    """Region-wide popularity: sum over all nodes of local vector times share."""
    if len(locals_) != len(loads):
        raise ValueError(f"{len(locals_)} popularity vectors for {len(loads)} load entries")
    probs = np.zeros(len(locals_[0]))
    for share, vec in zip(loads.shares, locals_):
        if len(vec) != probs.size:
            raise ValueError("popularity vectors have mismatched lengths")
        probs += share * vec.probs
    return PopularityVector(probs)
