"""Experiment inputs: node layouts, loads, and popularity, all from a seed.

A Scenario bundles the file catalog with the full set of edge nodes.  It
can be generated (uniform positions and loads, seeded local popularity) or
loaded from a JSON document; saving and loading round-trips every float
bit-exactly because the serializer emits shortest round-trip decimal forms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

import numpy as np

from .nodegraph import FapNode
from .popularity import Catalog, LoadWeights, PopularityVector, local_popularity

SCENARIO_FORMAT_VERSION = 1

DEFAULT_REGION = (1000.0, 1000.0)
DEFAULT_LAMBDA_RANGE = (50.0, 150.0)
DEFAULT_FILE_SIZE_BITS = 200e6
DEFAULT_ZIPF_Z = 0.6


@dataclass(frozen=True)
class Scenario:
    """A catalog plus the nodes that request from it.

    het_swaps is the number of random transpositions applied to the base
    popularity ranking at each node; 0 makes every node identical to the
    global ranking.
    """

    catalog: Catalog
    region: tuple[float, float]
    faps: tuple[FapNode, ...]
    seed: int
    zipf_z: float
    het_swaps: int
    lambda_range: tuple[float, float]

    def __post_init__(self) -> None:
        width, height = self.region
        if not (width > 0 and height > 0):
            raise ValueError(f"region sides must be positive, got {self.region}")
        lo, hi = self.lambda_range
        if not (0 < lo <= hi):
            raise ValueError(f"lambda_range must satisfy 0 < lo <= hi, got {self.lambda_range}")
        if self.zipf_z < 0:
            raise ValueError(f"zipf exponent must be >= 0, got {self.zipf_z}")
        if self.het_swaps < 0:
            raise ValueError(f"het_swaps must be >= 0, got {self.het_swaps}")
        ids = [f.id for f in self.faps]
        if ids != list(range(1, len(self.faps) + 1)):
            raise ValueError(f"node ids must be contiguous 1..{len(self.faps)}, got {ids}")
        for fap in self.faps:
            x, y = fap.position
            if not (0 <= x <= width and 0 <= y <= height):
                raise ValueError(f"node {fap.id} position {fap.position} outside the region")
            if not lo <= fap.rate <= hi:
                raise ValueError(f"node {fap.id} rate {fap.rate} outside {self.lambda_range}")
            if len(fap.local_pop) != self.catalog.file_count:
                raise ValueError(
                    f"node {fap.id} popularity has {len(fap.local_pop)} entries, "
                    f"catalog has {self.catalog.file_count}"
                )

    @property
    def num_faps(self) -> int:
        return len(self.faps)

    def local_pops(self) -> tuple[PopularityVector, ...]:
        """Local popularity vectors in node-id order (position m-1 is node m)."""
        return tuple(f.local_pop for f in self.faps)

    def load_weights(self) -> LoadWeights:
        return LoadWeights(rates=np.array([f.rate for f in self.faps], dtype=float))


def generate_scenario(
    num_faps: int,
    file_count: int,
    file_size_bits: float = DEFAULT_FILE_SIZE_BITS,
    zipf_z: float = DEFAULT_ZIPF_Z,
    het_swaps: int | None = None,
    region: tuple[float, float] = DEFAULT_REGION,
    lambda_range: tuple[float, float] = DEFAULT_LAMBDA_RANGE,
    seed: int = 1,
) -> Scenario:
    """Seeded scenario: uniform positions and rates, transposed popularity.

    het_swaps defaults to file_count // 2.  All randomness flows from the
    single seed, so equal arguments give bit-identical scenarios.
    """
    if num_faps < 1:
        raise ValueError(f"need at least one node, got {num_faps}")
    catalog = Catalog(file_count=file_count, file_size_bits=file_size_bits)
    swaps = file_count // 2 if het_swaps is None else het_swaps
    rng = np.random.default_rng(seed)
    xs = rng.uniform(0.0, region[0], num_faps)
    ys = rng.uniform(0.0, region[1], num_faps)
    rates = rng.uniform(lambda_range[0], lambda_range[1], num_faps)
    pop_seeds = [int(rng.integers(2**63)) for _ in range(num_faps)]
    faps = tuple(
        FapNode(
            id=m + 1,
            position=(float(xs[m]), float(ys[m])),
            rate=float(rates[m]),
            local_pop=local_popularity(catalog, zipf_z, swaps, pop_seeds[m]),
        )
        for m in range(num_faps)
    )
    return Scenario(
        catalog=catalog,
        region=(float(region[0]), float(region[1])),
        faps=faps,
        seed=seed,
        zipf_z=zipf_z,
        het_swaps=swaps,
        lambda_range=(float(lambda_range[0]), float(lambda_range[1])),
    )


def save_scenario(scenario: Scenario, path: str) -> None:
    """Write a scenario as a human-readable JSON document.

    Floats are emitted in shortest round-trip decimal form, so loading the
    file reproduces every value bit-exactly.
    """
    doc = {
        "version": SCENARIO_FORMAT_VERSION,
        "catalog": {
            "file_count": scenario.catalog.file_count,
            "file_size_bits": float(scenario.catalog.file_size_bits),
        },
        "region": [float(scenario.region[0]), float(scenario.region[1])],
        "seed": scenario.seed,
        "zipf_z": float(scenario.zipf_z),
        "het_swaps": scenario.het_swaps,
        "lambda_range": [float(scenario.lambda_range[0]), float(scenario.lambda_range[1])],
        "faps": [
            {
                "id": fap.id,
                "x": float(fap.position[0]),
                "y": float(fap.position[1]),
                "lambda": float(fap.rate),
                "popularity": [float(p) for p in fap.local_pop.probs],
            }
            for fap in scenario.faps
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def _is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _is_num(x: Any) -> bool:
    return _is_int(x) or isinstance(x, float)


def _field(doc: dict, path: str, key: str) -> Any:
    if key not in doc:
        raise ValueError(f"{path}{key}: missing required field")
    return doc[key]


def _num_field(doc: dict, path: str, key: str) -> float:
    value = _field(doc, path, key)
    if not _is_num(value):
        raise ValueError(f"{path}{key}: expected a number, got {value!r}")
    return float(value)


def _int_field(doc: dict, path: str, key: str) -> int:
    value = _field(doc, path, key)
    if not _is_int(value):
        raise ValueError(f"{path}{key}: expected an integer, got {value!r}")
    return value


def _pair_field(doc: dict, path: str, key: str) -> tuple[float, float]:
    value = _field(doc, path, key)
    if not isinstance(value, list) or len(value) != 2 or not all(_is_num(v) for v in value):
        raise ValueError(f"{path}{key}: expected a pair of numbers, got {value!r}")
    return float(value[0]), float(value[1])


def load_scenario(path: str) -> Scenario:
    """Load and validate a scenario document; errors name the field path."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError(f"top level: expected an object, got {type(doc).__name__}")
    version = _int_field(doc, "", "version")
    if version != SCENARIO_FORMAT_VERSION:
        raise ValueError(f"version: unsupported value {version}, expected {SCENARIO_FORMAT_VERSION}")
    catalog_doc = _field(doc, "", "catalog")
    if not isinstance(catalog_doc, dict):
        raise ValueError("catalog: expected an object")
    catalog = Catalog(
        file_count=_int_field(catalog_doc, "catalog.", "file_count"),
        file_size_bits=_num_field(catalog_doc, "catalog.", "file_size_bits"),
    )
    region = _pair_field(doc, "", "region")
    lambda_range = _pair_field(doc, "", "lambda_range")
    seed = _int_field(doc, "", "seed")
    zipf_z = _num_field(doc, "", "zipf_z")
    het_swaps = _int_field(doc, "", "het_swaps")
    faps_doc = _field(doc, "", "faps")
    if not isinstance(faps_doc, list) or not faps_doc:
        raise ValueError("faps: expected a non-empty array")
    faps = []
    for i, fap_doc in enumerate(faps_doc):
        path_i = f"faps[{i}]."
        if not isinstance(fap_doc, dict):
            raise ValueError(f"faps[{i}]: expected an object")
        pop = _field(fap_doc, path_i, "popularity")
        if not isinstance(pop, list) or not all(_is_num(p) for p in pop):
            raise ValueError(f"{path_i}popularity: expected an array of numbers")
        if len(pop) != catalog.file_count:
            raise ValueError(
                f"{path_i}popularity: has {len(pop)} entries, catalog has {catalog.file_count}"
            )
        try:
            local_pop = PopularityVector(probs=np.array(pop, dtype=float))
        except ValueError as exc:
            raise ValueError(f"{path_i}popularity: {exc}") from exc
        try:
            fap = FapNode(
                id=_int_field(fap_doc, path_i, "id"),
                position=(
                    _num_field(fap_doc, path_i, "x"),
                    _num_field(fap_doc, path_i, "y"),
                ),
                rate=_num_field(fap_doc, path_i, "lambda"),
                local_pop=local_pop,
            )
        except ValueError as exc:
            raise ValueError(f"faps[{i}]: {exc}") from exc
        faps.append(fap)
    return Scenario(
        catalog=catalog,
        region=region,
        faps=tuple(faps),
        seed=seed,
        zipf_z=zipf_z,
        het_swaps=het_swaps,
        lambda_range=lambda_range,
    )
