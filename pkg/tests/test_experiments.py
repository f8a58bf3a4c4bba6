"""Sweep harness: rows, specs, CSV output, and the self-check suite."""

import numpy as np
import pytest

from fogcache.baselines import baseline_nocoop
from fogcache.conflict import solve
from fogcache.errors import InvariantViolation
from fogcache.experiments import (
    CSV_COLUMNS,
    DEFAULT_SWEEP_VALUES,
    ResultRow,
    SweepSpec,
    _cache_size,
    run_single,
    run_sweep,
    run_verification,
    write_csv,
)
from fogcache.scenario import generate_scenario
from fogcache.traffic import CacheBudget


def _row(**overrides):
    base = dict(
        seed=1,
        num_faps=13,
        file_count=50,
        k=10,
        zipf_z=0.6,
        gamma_d=120.0,
        gamma_l=5.0,
        strategy="nocoop",
        whole_traffic_bps=1.5e9,
        incremental_traffic_bps=0.0,
        num_clusters=0,
        num_nonclustered=13,
        num_candidates=0,
        num_maximal=0,
        runtime_ms=0.0,
    )
    base.update(overrides)
    return ResultRow(**base)


def test_result_row_csv_values_use_round_trip_floats():
    row = _row(whole_traffic_bps=1234.5000000000002, zipf_z=0.6)
    values = row.csv_values()
    assert len(values) == len(CSV_COLUMNS)
    assert values[CSV_COLUMNS.index("whole_traffic_bps")] == "1234.5000000000002"
    assert values[CSV_COLUMNS.index("zipf_z")] == "0.6"
    assert values[CSV_COLUMNS.index("runtime_ms")] == "0.0"
    assert values[CSV_COLUMNS.index("strategy")] == "nocoop"


def test_result_row_validation():
    with pytest.raises(ValueError):
        _row(strategy="mystery")
    with pytest.raises(InvariantViolation):
        _row(strategy="proposed-greedy", incremental_traffic_bps=-1.0)
    with pytest.raises(InvariantViolation):
        _row(strategy="proposed-greedy", whole_traffic_bps=1.0, incremental_traffic_bps=2.0)
    with pytest.raises(InvariantViolation):
        _row(num_candidates=1, num_maximal=2)
    # baseline reconstructions may report negative incremental traffic
    _row(strategy="lcd", incremental_traffic_bps=-5.0, num_clusters=2)


def test_sweep_spec_validation():
    ok = dict(variable="k-over-f", values=(0.1, 0.5), strategies=("nocoop",))
    SweepSpec(**ok)
    with pytest.raises(ValueError):
        SweepSpec(**{**ok, "variable": "bandwidth"})
    with pytest.raises(ValueError):
        SweepSpec(**{**ok, "values": ()})
    with pytest.raises(ValueError):
        SweepSpec(**{**ok, "values": (0.5, 0.1)})
    with pytest.raises(ValueError):
        SweepSpec(**{**ok, "values": (0.5, 1.5)})
    with pytest.raises(ValueError):
        SweepSpec(variable="gamma-d", values=(-10.0, 100.0), strategies=("nocoop",))
    with pytest.raises(ValueError):
        SweepSpec(**{**ok, "strategies": ("nocoop", "mystery")})
    with pytest.raises(ValueError):
        SweepSpec(**{**ok, "replications": 0})


def test_cache_size_mapping():
    assert _cache_size(0.1, 50) == 5
    assert _cache_size(0.2, 50) == 10
    assert _cache_size(0.01, 50) == 1  # floor of 1 file
    assert _cache_size(1.0, 50) == 50


def test_run_single_matches_direct_calls():
    sc = generate_scenario(num_faps=8, file_count=20, seed=6)
    row = run_single(sc, "nocoop", 4, 300.0, 10.0)
    _, report = baseline_nocoop(sc, 4)
    assert row.whole_traffic_bps == report.whole
    assert row.incremental_traffic_bps == report.incremental
    assert row.num_clusters == 0
    assert row.num_nonclustered == 8
    assert row.runtime_ms == 0.0

    row = run_single(sc, "proposed-greedy", 4, 300.0, 10.0)
    sol = solve(sc, CacheBudget(k=4), 300.0, 10.0, solver="greedy")
    assert row.whole_traffic_bps == sol.traffic.whole
    assert row.num_clusters == len(sol.clusters)
    assert row.num_candidates == sol.num_candidates
    assert row.num_maximal == sol.num_maximal

    with pytest.raises(ValueError):
        run_single(sc, "mystery", 4, 300.0, 10.0)


def test_run_single_timing_flag():
    sc = generate_scenario(num_faps=5, file_count=10, seed=4)
    assert run_single(sc, "nocoop", 2, 100.0, 0.0).runtime_ms == 0.0
    assert run_single(sc, "nocoop", 2, 100.0, 0.0, with_timing=True).runtime_ms > 0.0


def test_run_sweep_shape_and_order():
    spec = SweepSpec(
        variable="k-over-f",
        values=(0.1, 0.3),
        strategies=("ul", "nocoop"),
        replications=2,
        num_faps=5,
        file_count=10,
    )
    rows = run_sweep(spec)
    assert len(rows) == 2 * 2 * 2
    keys = [(r.k, r.seed, r.strategy) for r in rows]
    assert keys == [
        (1, 1, "nocoop"), (1, 1, "ul"), (1, 2, "nocoop"), (1, 2, "ul"),
        (3, 1, "nocoop"), (3, 1, "ul"), (3, 2, "nocoop"), (3, 2, "ul"),
    ]
    # the un-swept knobs land in every row
    assert all(r.gamma_d == spec.gamma_d and r.gamma_l == spec.gamma_l for r in rows)


def test_run_sweep_is_deterministic():
    spec = SweepSpec(
        variable="gamma-d",
        values=(100.0, 400.0),
        strategies=("proposed-greedy", "lcd"),
        replications=2,
        num_faps=6,
        file_count=12,
    )
    a = run_sweep(spec)
    b = run_sweep(spec)
    assert a == b


def test_run_sweep_cell_errors_name_the_cell():
    spec = SweepSpec(
        variable="gamma-d",
        values=(1500.0,),  # spans the whole region, so candidates exist
        strategies=("proposed-exact",),
        num_faps=10,
        file_count=10,
        gamma_l=0.0,
        exact_guard=0,  # force the guard to trip
    )
    with pytest.raises(ValueError, match="sweep cell gamma-d=1500.0 seed=1"):
        run_sweep(spec)


def test_default_sweep_grids_are_valid():
    for var, values in DEFAULT_SWEEP_VALUES.items():
        SweepSpec(variable=var, values=values, strategies=("nocoop",))


def test_write_csv_round_trip(tmp_path):
    spec = SweepSpec(
        variable="k-over-f",
        values=(0.2, 0.4),
        strategies=("nocoop", "ul"),
        num_faps=4,
        file_count=10,
    )
    rows = run_sweep(spec)
    path = tmp_path / "out.csv"
    write_csv(rows, str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 1 + len(rows)
    # float cells parse back to the exact same values
    first = lines[1].split(",")
    assert float(first[CSV_COLUMNS.index("whole_traffic_bps")]) == rows[0].whole_traffic_bps


def test_write_csv_byte_identical_runs(tmp_path):
    spec = SweepSpec(
        variable="gamma-l",
        values=(0.0, 10.0),
        strategies=("proposed-greedy", "nocoop"),
        replications=2,
        num_faps=6,
        file_count=12,
    )
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_csv(run_sweep(spec), str(p1))
    write_csv(run_sweep(spec), str(p2))
    assert p1.read_bytes() == p2.read_bytes()


def test_run_verification_reports_clean_suite():
    lines = run_verification(num_graphs=25, num_scenarios=5, seed=1)
    assert len(lines) == 3
    assert "25 random graphs" in lines[0]
    assert "exact oracle" in lines[1]
