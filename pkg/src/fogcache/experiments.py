"""Parameter sweeps and their CSV interface.

A sweep varies one knob (normalized cache size, distance threshold, or load
threshold) over a value grid, replicates each cell across seeds and
strategies, and emits one row per (value, seed, strategy).  Output is
deterministic: rows are fully ordered and runtime measurement is opt-in so
that identical inputs produce byte-identical CSV files.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .baselines import baseline_lcd, baseline_nocoop, baseline_ul
from .cliques import brute_force_maximal_cliques, maximal_cliques
from .conflict import EXACT_GUARD_DEFAULT, solve
from .errors import InvariantViolation
from .nodegraph import NodeGraph
from .scenario import (
    DEFAULT_FILE_SIZE_BITS,
    DEFAULT_LAMBDA_RANGE,
    DEFAULT_REGION,
    DEFAULT_ZIPF_Z,
    Scenario,
    generate_scenario,
)
from .traffic import CacheBudget

VAR_K_OVER_F = "k-over-f"
VAR_GAMMA_D = "gamma-d"
VAR_GAMMA_L = "gamma-l"
SWEEP_VARIABLES = (VAR_K_OVER_F, VAR_GAMMA_D, VAR_GAMMA_L)

STRATEGY_NOCOOP = "nocoop"
STRATEGY_LCD = "lcd"
STRATEGY_UL = "ul"
STRATEGY_GREEDY = "proposed-greedy"
STRATEGY_EXACT = "proposed-exact"
STRATEGIES = (STRATEGY_NOCOOP, STRATEGY_LCD, STRATEGY_UL, STRATEGY_GREEDY, STRATEGY_EXACT)

CSV_COLUMNS = (
    "seed",
    "num_faps",
    "file_count",
    "k",
    "zipf_z",
    "gamma_d_m",
    "gamma_l_rps",
    "strategy",
    "whole_traffic_bps",
    "incremental_traffic_bps",
    "num_clusters",
    "num_nonclustered",
    "num_candidates",
    "num_maximal",
    "runtime_ms",
)

DEFAULT_GAMMA_D = 120.0
DEFAULT_GAMMA_L = 5.0
DEFAULT_K_OVER_F = 0.2

# default value grids per swept variable
DEFAULT_SWEEP_VALUES = {
    VAR_K_OVER_F: (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9),
    VAR_GAMMA_D: (100.0, 200.0, 300.0, 400.0, 500.0, 600.0),
    VAR_GAMMA_L: (0.0, 10.0, 20.0, 30.0),
}


@dataclass(frozen=True)
class ResultRow:
    """One sweep cell; column order matches CSV_COLUMNS."""

    seed: int
    num_faps: int
    file_count: int
    k: int
    zipf_z: float
    gamma_d: float
    gamma_l: float
    strategy: str
    whole_traffic_bps: float
    incremental_traffic_bps: float
    num_clusters: int
    num_nonclustered: int
    num_candidates: int
    num_maximal: int
    runtime_ms: float

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.strategy in (STRATEGY_GREEDY, STRATEGY_EXACT):
            if self.incremental_traffic_bps < 0:
                raise InvariantViolation(
                    f"proposed strategy produced negative incremental traffic "
                    f"{self.incremental_traffic_bps!r}"
                )
            if self.whole_traffic_bps < self.incremental_traffic_bps:
                raise InvariantViolation(
                    f"whole traffic {self.whole_traffic_bps!r} below incremental "
                    f"{self.incremental_traffic_bps!r}"
                )
        if self.num_candidates < self.num_maximal:
            raise InvariantViolation(
                f"{self.num_candidates} candidates but {self.num_maximal} maximal cliques"
            )

    def csv_values(self) -> tuple[str, ...]:
        return (
            str(self.seed),
            str(self.num_faps),
            str(self.file_count),
            str(self.k),
            repr(self.zipf_z),
            repr(self.gamma_d),
            repr(self.gamma_l),
            self.strategy,
            repr(self.whole_traffic_bps),
            repr(self.incremental_traffic_bps),
            str(self.num_clusters),
            str(self.num_nonclustered),
            str(self.num_candidates),
            str(self.num_maximal),
            repr(self.runtime_ms),
        )


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: the varied knob, its value grid, and everything held fixed."""

    variable: str
    values: tuple[float, ...]
    strategies: tuple[str, ...]
    replications: int = 1
    base_seed: int = 1
    num_faps: int = 13
    file_count: int = 50
    file_size_bits: float = DEFAULT_FILE_SIZE_BITS
    zipf_z: float = DEFAULT_ZIPF_Z
    het_swaps: int | None = None
    region: tuple[float, float] = DEFAULT_REGION
    lambda_range: tuple[float, float] = DEFAULT_LAMBDA_RANGE
    k_over_f: float = DEFAULT_K_OVER_F
    gamma_d: float = DEFAULT_GAMMA_D
    gamma_l: float = DEFAULT_GAMMA_L
    kn_fixed: int | None = None
    exact_guard: int = EXACT_GUARD_DEFAULT
    with_timing: bool = False

    def __post_init__(self) -> None:
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(f"unknown sweep variable {self.variable!r}")
        if not self.values:
            raise ValueError("sweep needs at least one value")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError(f"sweep values must be strictly increasing, got {self.values}")
        if self.variable == VAR_K_OVER_F and not all(0 < v <= 1 for v in self.values):
            raise ValueError(f"{VAR_K_OVER_F} values must lie in (0, 1], got {self.values}")
        if self.variable != VAR_K_OVER_F and any(v < 0 for v in self.values):
            raise ValueError(f"threshold values must be >= 0, got {self.values}")
        if not self.strategies:
            raise ValueError("sweep needs at least one strategy")
        for s in self.strategies:
            if s not in STRATEGIES:
                raise ValueError(f"unknown strategy {s!r}, expected one of {STRATEGIES}")
        if self.replications < 1:
            raise ValueError(f"replications must be >= 1, got {self.replications}")


def _cache_size(k_over_f: float, file_count: int) -> int:
    """Per-node cache size from the normalized knob, at least 1 file."""
    return max(1, round(k_over_f * file_count))


def run_single(
    scenario: Scenario,
    strategy: str,
    k: int,
    gamma_d: float,
    gamma_l: float,
    kn_fixed: int | None = None,
    exact_guard: int = EXACT_GUARD_DEFAULT,
    with_timing: bool = False,
) -> ResultRow:
    """Run one strategy on one scenario and fold the outcome into a row.

    runtime_ms is 0.0 unless with_timing is set; wall-clock measurements
    would break byte-identical reruns, so they are opt-in.
    """
    started = time.perf_counter()
    num_clusters = 0
    num_nonclustered = scenario.num_faps
    num_candidates = 0
    num_maximal = 0
    if strategy == STRATEGY_NOCOOP:
        _, report = baseline_nocoop(scenario, k)
    elif strategy == STRATEGY_LCD:
        placement, report = baseline_lcd(scenario, k, gamma_d)
        num_clusters = len(placement.clusters)
        num_nonclustered = scenario.num_faps - sum(len(c) for c in placement.clusters)
    elif strategy == STRATEGY_UL:
        _, report = baseline_ul(scenario, k)
    elif strategy in (STRATEGY_GREEDY, STRATEGY_EXACT):
        budget = CacheBudget(k=k, kn_fixed=kn_fixed)
        solver = "greedy" if strategy == STRATEGY_GREEDY else "exact"
        solution = solve(scenario, budget, gamma_d, gamma_l, solver, exact_guard=exact_guard)
        report = solution.traffic
        num_clusters = len(solution.clusters)
        num_nonclustered = len(solution.nonclustered)
        num_candidates = solution.num_candidates
        num_maximal = solution.num_maximal
    else:
        raise ValueError(f"unknown strategy {strategy!r}, expected one of {STRATEGIES}")
    elapsed_ms = (time.perf_counter() - started) * 1000.0 if with_timing else 0.0
    return ResultRow(
        seed=scenario.seed,
        num_faps=scenario.num_faps,
        file_count=scenario.catalog.file_count,
        k=k,
        zipf_z=scenario.zipf_z,
        gamma_d=gamma_d,
        gamma_l=gamma_l,
        strategy=strategy,
        whole_traffic_bps=report.whole,
        incremental_traffic_bps=report.incremental,
        num_clusters=num_clusters,
        num_nonclustered=num_nonclustered,
        num_candidates=num_candidates,
        num_maximal=num_maximal,
        runtime_ms=elapsed_ms,
    )


def run_sweep(spec: SweepSpec) -> list[ResultRow]:
    """All sweep cells, ordered by (value, seed, strategy name).

    A failing cell aborts the sweep with the offending value, seed, and
    strategy prepended to the original error message.
    """
    scenarios = {}
    for rep in range(spec.replications):
        seed = spec.base_seed + rep
        scenarios[seed] = generate_scenario(
            num_faps=spec.num_faps,
            file_count=spec.file_count,
            file_size_bits=spec.file_size_bits,
            zipf_z=spec.zipf_z,
            het_swaps=spec.het_swaps,
            region=spec.region,
            lambda_range=spec.lambda_range,
            seed=seed,
        )
    rows = []
    for value in spec.values:
        k = _cache_size(spec.k_over_f, spec.file_count)
        gamma_d = spec.gamma_d
        gamma_l = spec.gamma_l
        if spec.variable == VAR_K_OVER_F:
            k = _cache_size(value, spec.file_count)
        elif spec.variable == VAR_GAMMA_D:
            gamma_d = value
        else:
            gamma_l = value
        for seed in sorted(scenarios):
            for strategy in sorted(set(spec.strategies)):
                try:
                    row = run_single(
                        scenarios[seed],
                        strategy,
                        k,
                        gamma_d,
                        gamma_l,
                        kn_fixed=spec.kn_fixed,
                        exact_guard=spec.exact_guard,
                        with_timing=spec.with_timing,
                    )
                except (ValueError, InvariantViolation) as exc:
                    raise type(exc)(
                        f"sweep cell {spec.variable}={value!r} seed={seed} "
                        f"strategy={strategy}: {exc}"
                    ) from exc
                rows.append((value, seed, strategy, row))
    rows.sort(key=lambda item: (item[0], item[1], item[2]))
    return [row for _, _, _, row in rows]


def write_csv(rows: Sequence[ResultRow], path: str) -> None:
    """Write rows with the fixed header; floats use shortest round-trip form."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(row.csv_values())


def run_verification(
    num_graphs: int = 200, num_scenarios: int = 25, seed: int = 0
) -> list[str]:
    """Randomized self-checks: clique search vs oracle, greedy vs exact.

    Returns human-readable summary lines; raises InvariantViolation on the
    first discrepancy.  Both suites re-exercise the traffic decomposition
    identity, which every pipeline run validates internally.
    """
    rng = np.random.default_rng(seed)
    for i in range(num_graphs):
        m = int(rng.integers(4, 14))
        density = float(rng.uniform(0.1, 0.9))
        edges = {
            (a, b)
            for a in range(1, m + 1)
            for b in range(a + 1, m + 1)
            if rng.random() < density
        }
        g = NodeGraph.from_edges(m, edges)
        fast = maximal_cliques(g)
        oracle = brute_force_maximal_cliques(g)
        if fast != oracle:
            raise InvariantViolation(
                f"clique search disagrees with the oracle on graph {i} "
                f"(M={m}, density={density:.2f}): {sorted(fast)} vs {sorted(oracle)}"
            )
    lines = [f"clique search matches the brute-force oracle on {num_graphs} random graphs"]

    compared = 0
    skipped = 0
    ratios = []
    for j in range(num_scenarios):
        scenario = generate_scenario(num_faps=8, file_count=20, seed=10_000 + j)
        budget = CacheBudget(k=3)
        greedy = solve(scenario, budget, gamma_d=450.0, gamma_l=10.0, solver="greedy")
        if greedy.num_candidates > EXACT_GUARD_DEFAULT:
            skipped += 1
            continue
        exact = solve(scenario, budget, gamma_d=450.0, gamma_l=10.0, solver="exact")
        if greedy.objective > exact.objective * (1 + 1e-12) + 1e-9:
            raise InvariantViolation(
                f"greedy objective {greedy.objective!r} exceeds exact "
                f"{exact.objective!r} on scenario seed {scenario.seed}"
            )
        compared += 1
        if exact.objective > 0:
            ratios.append(greedy.objective / exact.objective)
    mean_ratio = sum(ratios) / len(ratios) if ratios else 1.0
    lines.append(
        f"greedy is bounded by the exact oracle on {compared} scenarios "
        f"({skipped} skipped over the guard); mean objective ratio {mean_ratio:.6f}"
    )
    lines.append("traffic decomposition identity held on every solved instance")
    return lines
