"""Command-line front end.

Four subcommands: ``gen`` writes a scenario file, ``solve`` runs one
strategy on one scenario, ``sweep`` runs a parameter sweep to CSV, and
``verify`` runs the randomized self-checks.  Exit codes: 0 on success, 1
for invalid input (bad flags, unreadable or malformed files), 2 when an
internal invariant is violated.  Relative output paths are resolved under
$FOGCACHE_OUT_DIR when that variable is set.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .conflict import EXACT_GUARD_DEFAULT
from .errors import InvariantViolation
from .experiments import (
    DEFAULT_GAMMA_D,
    DEFAULT_GAMMA_L,
    DEFAULT_K_OVER_F,
    DEFAULT_SWEEP_VALUES,
    STRATEGIES,
    STRATEGY_EXACT,
    STRATEGY_GREEDY,
    SWEEP_VARIABLES,
    SweepSpec,
    run_single,
    run_sweep,
    run_verification,
    write_csv,
)
from .scenario import (
    DEFAULT_FILE_SIZE_BITS,
    DEFAULT_LAMBDA_RANGE,
    DEFAULT_REGION,
    DEFAULT_ZIPF_Z,
    generate_scenario,
    load_scenario,
    save_scenario,
)

OUT_DIR_ENV = "FOGCACHE_OUT_DIR"


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with code 1, not 2."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _resolve_out(path: str) -> str:
    base = os.environ.get(OUT_DIR_ENV)
    if base and not os.path.isabs(path):
        os.makedirs(base, exist_ok=True)
        return os.path.join(base, path)
    return path


def _kn_policy(text: str) -> int | None:
    if text == "full":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'full' or an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"fixed cluster capacity must be >= 1, got {value}")
    return value


def _add_generation_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("-M", "--num-faps", type=int, default=13, help="number of nodes")
    p.add_argument("-F", "--file-count", type=int, default=50, help="catalog size")
    p.add_argument(
        "-L",
        "--file-size-bits",
        type=float,
        default=DEFAULT_FILE_SIZE_BITS,
        help="file size in bits",
    )
    p.add_argument("-z", "--zipf-z", type=float, default=DEFAULT_ZIPF_Z, help="Zipf exponent")
    p.add_argument(
        "--het-swaps",
        type=int,
        default=None,
        help="popularity transpositions per node (default: file count // 2)",
    )
    p.add_argument("--seed", type=int, default=1, help="master seed")
    p.add_argument(
        "--region",
        type=float,
        nargs=2,
        metavar=("WIDTH", "HEIGHT"),
        default=list(DEFAULT_REGION),
        help="region size in meters",
    )
    p.add_argument(
        "--lambda-range",
        type=float,
        nargs=2,
        metavar=("LO", "HI"),
        default=list(DEFAULT_LAMBDA_RANGE),
        help="request-rate range in requests/s",
    )


def _generate_from_args(args: argparse.Namespace):
    return generate_scenario(
        num_faps=args.num_faps,
        file_count=args.file_count,
        file_size_bits=args.file_size_bits,
        zipf_z=args.zipf_z,
        het_swaps=args.het_swaps,
        region=tuple(args.region),
        lambda_range=tuple(args.lambda_range),
        seed=args.seed,
    )


def _cmd_gen(args: argparse.Namespace) -> int:
    scenario = _generate_from_args(args)
    out = _resolve_out(args.out)
    save_scenario(scenario, out)
    print(f"wrote scenario with {scenario.num_faps} nodes to {out}")
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    if args.scenario is not None:
        scenario = load_scenario(args.scenario)
    else:
        scenario = _generate_from_args(args)
    row = run_single(
        scenario,
        args.strategy,
        args.cache_size,
        args.gamma_d,
        args.gamma_l,
        kn_fixed=args.kn_policy,
        exact_guard=args.exact_guard,
        with_timing=args.timing,
    )
    print(f"strategy: {row.strategy}")
    print(f"k: {row.k}  gamma_d: {row.gamma_d!r}  gamma_l: {row.gamma_l!r}")
    print(f"whole_traffic_bps: {row.whole_traffic_bps!r}")
    print(f"incremental_traffic_bps: {row.incremental_traffic_bps!r}")
    print(f"num_clusters: {row.num_clusters}  num_nonclustered: {row.num_nonclustered}")
    print(f"num_candidates: {row.num_candidates}  num_maximal: {row.num_maximal}")
    if args.timing:
        print(f"runtime_ms: {row.runtime_ms!r}")
    if args.out is not None:
        out = _resolve_out(args.out)
        write_csv([row], out)
        print(f"wrote 1 row to {out}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    values = args.values if args.values is not None else list(DEFAULT_SWEEP_VALUES[args.var])
    spec = SweepSpec(
        variable=args.var,
        values=tuple(values),
        strategies=tuple(args.strategies),
        replications=args.reps,
        base_seed=args.seed,
        num_faps=args.num_faps,
        file_count=args.file_count,
        file_size_bits=args.file_size_bits,
        zipf_z=args.zipf_z,
        het_swaps=args.het_swaps,
        region=tuple(args.region),
        lambda_range=tuple(args.lambda_range),
        k_over_f=args.k_over_f,
        gamma_d=args.gamma_d,
        gamma_l=args.gamma_l,
        kn_fixed=args.kn_policy,
        exact_guard=args.exact_guard,
        with_timing=args.timing,
    )
    rows = run_sweep(spec)
    out = _resolve_out(args.out)
    write_csv(rows, out)
    print(f"wrote {len(rows)} rows to {out}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    lines = run_verification(
        num_graphs=args.graphs, num_scenarios=args.scenarios, seed=args.seed
    )
    for line in lines:
        print(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fogcache", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a scenario file")
    _add_generation_args(gen)
    gen.add_argument("--out", required=True, help="scenario file to write")
    gen.set_defaults(func=_cmd_gen)

    solve_p = sub.add_parser("solve", help="run one strategy on one scenario")
    source = solve_p.add_mutually_exclusive_group(required=True)
    source.add_argument("--scenario", help="scenario file to load")
    source.add_argument(
        "--generate", action="store_true", help="generate the scenario from flags instead"
    )
    _add_generation_args(solve_p)
    solve_p.add_argument("-K", "--cache-size", type=int, required=True, help="files per node")
    solve_p.add_argument("--gamma-d", type=float, default=DEFAULT_GAMMA_D, help="distance threshold, m")
    solve_p.add_argument(
        "--gamma-l", type=float, default=DEFAULT_GAMMA_L, help="load-difference threshold, requests/s"
    )
    solve_p.add_argument("--strategy", choices=STRATEGIES, default=STRATEGY_GREEDY)
    solve_p.add_argument(
        "--kn-policy",
        type=_kn_policy,
        default=None,
        help="'full' for min(S*K, F) distinct files per cluster, or a fixed integer",
    )
    solve_p.add_argument("--exact-guard", type=int, default=EXACT_GUARD_DEFAULT)
    solve_p.add_argument("--timing", action="store_true", help="measure wall-clock runtime")
    solve_p.add_argument("--out", help="also write the result as a one-row CSV")
    solve_p.set_defaults(func=_cmd_solve)

    sweep_p = sub.add_parser("sweep", help="sweep one variable to CSV")
    _add_generation_args(sweep_p)
    sweep_p.add_argument("--var", choices=SWEEP_VARIABLES, required=True)
    sweep_p.add_argument(
        "--values", type=float, nargs="+", default=None, help="value grid (default per variable)"
    )
    sweep_p.add_argument("--reps", type=int, default=1, help="seeds per value")
    sweep_p.add_argument(
        "--strategies",
        nargs="+",
        default=[s for s in STRATEGIES if s != STRATEGY_EXACT],
        help="strategies to run (default: all but proposed-exact)",
    )
    sweep_p.add_argument("--k-over-f", type=float, default=DEFAULT_K_OVER_F)
    sweep_p.add_argument("--gamma-d", type=float, default=DEFAULT_GAMMA_D)
    sweep_p.add_argument("--gamma-l", type=float, default=DEFAULT_GAMMA_L)
    sweep_p.add_argument("--kn-policy", type=_kn_policy, default=None)
    sweep_p.add_argument("--exact-guard", type=int, default=EXACT_GUARD_DEFAULT)
    sweep_p.add_argument("--timing", action="store_true")
    sweep_p.add_argument("--out", required=True, help="CSV file to write")
    sweep_p.set_defaults(func=_cmd_sweep)

    verify_p = sub.add_parser("verify", help="run randomized self-checks")
    verify_p.add_argument("--graphs", type=int, default=200)
    verify_p.add_argument("--scenarios", type=int, default=25)
    verify_p.add_argument("--seed", type=int, default=0)
    verify_p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
