"""Command-line interface: gen, solve, sweep, verify."""

import csv
import subprocess
import sys

import pytest

from fogcache.cli import main
from fogcache.experiments import CSV_COLUMNS, run_single
from fogcache.scenario import generate_scenario, load_scenario


def test_gen_writes_loadable_scenario(tmp_path, capsys):
    out = tmp_path / "sc.json"
    code = main(["gen", "-M", "6", "-F", "12", "--seed", "5", "--out", str(out)])
    assert code == 0
    assert "wrote scenario with 6 nodes" in capsys.readouterr().out
    loaded = load_scenario(str(out))
    assert loaded == generate_scenario(num_faps=6, file_count=12, seed=5)


def test_gen_rejects_bad_arguments(tmp_path, capsys):
    out = tmp_path / "sc.json"
    code = main(["gen", "-M", "0", "--out", str(out)])
    assert code == 1
    assert "error" in capsys.readouterr().err
    assert not out.exists()


def test_missing_subcommand_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1


def test_unknown_flag_exits_one():
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--generate", "-K", "5", "--turbo"])
    assert exc.value.code == 1


def test_solve_generate_prints_summary(capsys):
    code = main(["solve", "--generate", "-M", "8", "-F", "20", "--seed", "3", "-K", "4"])
    assert code == 0
    out = capsys.readouterr().out
    assert "strategy: proposed-greedy" in out
    assert "whole_traffic_bps:" in out
    assert "num_clusters:" in out
    assert "runtime_ms" not in out  # timing is opt-in


def test_solve_writes_single_row_csv(tmp_path, capsys):
    out = tmp_path / "row.csv"
    code = main(
        ["solve", "--generate", "-M", "8", "-F", "20", "--seed", "3", "-K", "4",
         "--gamma-d", "400", "--gamma-l", "10", "--strategy", "lcd", "--out", str(out)]
    )
    assert code == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 1
    sc = generate_scenario(num_faps=8, file_count=20, seed=3)
    direct = run_single(sc, "lcd", 4, 400.0, 10.0)
    assert float(rows[0]["whole_traffic_bps"]) == direct.whole_traffic_bps
    assert rows[0]["strategy"] == "lcd"


def test_solve_from_file_matches_generate(tmp_path, capsys):
    path = tmp_path / "sc.json"
    main(["gen", "-M", "7", "-F", "15", "--seed", "9", "--out", str(path)])
    capsys.readouterr()
    main(["solve", "--scenario", str(path), "-K", "3"])
    from_file = capsys.readouterr().out
    main(["solve", "--generate", "-M", "7", "-F", "15", "--seed", "9", "-K", "3"])
    from_flags = capsys.readouterr().out
    assert from_file == from_flags


def test_solve_requires_exactly_one_source(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "-K", "4"])
    assert exc.value.code == 1
    path = tmp_path / "sc.json"
    main(["gen", "-M", "4", "-F", "8", "--out", str(path)])
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--scenario", str(path), "--generate", "-K", "4"])
    assert exc.value.code == 1


def test_solve_exact_guard_maps_to_invalid_input(capsys):
    code = main(
        ["solve", "--generate", "-M", "6", "-F", "12", "-K", "2",
         "--gamma-d", "2000", "--gamma-l", "0", "--strategy", "proposed-exact",
         "--exact-guard", "1"]
    )
    assert code == 1
    assert "capped at 1 vertices" in capsys.readouterr().err


def test_solve_kn_policy_values(capsys):
    # an integer policy parses; a sky-high load threshold keeps the graph
    # empty so no fixed-budget weight signs come into play
    code = main(
        ["solve", "--generate", "-M", "6", "-F", "12", "-K", "3",
         "--gamma-d", "500", "--gamma-l", "10000", "--kn-policy", "3"]
    )
    assert code == 0
    assert "num_clusters: 0" in capsys.readouterr().out
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--generate", "-K", "3", "--kn-policy", "abc"])
    assert exc.value.code == 1


def test_solve_fixed_kn_can_reject_lossy_pooling(capsys):
    # pooling at exactly K files per cluster loses traffic on heterogeneous
    # locals; the solver treats the resulting negative weight as a contract
    # violation and the command reports invalid input
    code = main(
        ["solve", "--generate", "-M", "6", "-F", "12", "-K", "3",
         "--gamma-d", "500", "--kn-policy", "3"]
    )
    assert code == 1
    assert "negative cluster weight" in capsys.readouterr().err


def test_solve_timing_flag_prints_runtime(capsys):
    code = main(["solve", "--generate", "-M", "5", "-F", "10", "-K", "2", "--timing"])
    assert code == 0
    assert "runtime_ms:" in capsys.readouterr().out


def test_sweep_writes_csv(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code = main(
        ["sweep", "--var", "k-over-f", "--values", "0.2", "0.4", "--reps", "2",
         "-M", "5", "-F", "10", "--strategies", "nocoop", "ul", "--out", str(out)]
    )
    assert code == 0
    assert "wrote 8 rows" in capsys.readouterr().out
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 9


def test_sweep_default_strategies_exclude_exact(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code = main(
        ["sweep", "--var", "gamma-l", "--values", "0", "10",
         "-M", "5", "-F", "10", "--out", str(out)]
    )
    assert code == 0
    with open(out, newline="") as fh:
        strategies = {row["strategy"] for row in csv.DictReader(fh)}
    assert strategies == {"nocoop", "lcd", "ul", "proposed-greedy"}


def test_sweep_reruns_are_byte_identical(tmp_path, capsys):
    args = ["sweep", "--var", "gamma-d", "--values", "100", "300", "--reps", "2",
            "-M", "6", "-F", "12", "--strategies", "proposed-greedy", "nocoop"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_command(capsys):
    code = main(["verify", "--graphs", "10", "--scenarios", "3"])
    assert code == 0
    out = capsys.readouterr().out
    assert "10 random graphs" in out
    assert "exact oracle" in out


def test_out_dir_env_redirects_relative_paths(tmp_path, monkeypatch, capsys):
    base = tmp_path / "results"
    monkeypatch.setenv("FOGCACHE_OUT_DIR", str(base))
    code = main(["gen", "-M", "4", "-F", "8", "--out", "sc.json"])
    assert code == 0
    assert (base / "sc.json").exists()
    # absolute paths are left alone
    absolute = tmp_path / "abs.json"
    main(["gen", "-M", "4", "-F", "8", "--out", str(absolute)])
    assert absolute.exists()


def test_console_script_entry_point(tmp_path):
    result = subprocess.run(
        [sys.executable, "-m", "fogcache.cli", "verify", "--graphs", "3", "--scenarios", "1"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "3 random graphs" in result.stdout
