"""Cooperative edge caching optimizer.

Builds a feasibility graph over edge nodes, enumerates candidate
cooperation clusters as complete subgraphs, weights them by incremental
offloaded backhaul traffic, and selects disjoint clusters as a max-weight
independent set.  Includes baseline strategies, scenario generation and
serialization, parameter sweeps with CSV output, and a CLI.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .baselines import Placement, baseline_lcd, baseline_nocoop, baseline_ul
from .cliques import (
    CliqueCatalog,
    all_complete_subgraphs,
    brute_force_maximal_cliques,
    build_clique_catalog,
    maximal_cliques,
)
from .conflict import (
    CandidateCluster,
    ClusteringSolution,
    WeightedGraph,
    build_weighted_graph,
    exact_mwis,
    greedy_mwis,
    solve,
)
from .errors import InvariantViolation
from .nodegraph import (
    AdjacencyTable,
    FapNode,
    NodeGraph,
    adjacency_tables,
    build_node_graph,
    pairwise_metrics,
)
from .popularity import (
    Catalog,
    LoadWeights,
    PopularityVector,
    cluster_popularity,
    global_popularity,
    local_popularity,
    zipf_popularity,
)
from .scenario import Scenario, generate_scenario, load_scenario, save_scenario
from .experiments import ResultRow, SweepSpec, run_single, run_sweep, run_verification, write_csv
from .traffic import (
    CacheBudget,
    TrafficReport,
    cluster_file_assignment,
    incremental_traffic,
    offloaded_traffic_cluster,
    offloaded_traffic_fap,
    whole_traffic,
)

__version__ = "0.1.0"

__all__ = [
    "AdjacencyTable",
    "CacheBudget",
    "CandidateCluster",
    "Catalog",
    "CliqueCatalog",
    "ClusteringSolution",
    "FapNode",
    "InvariantViolation",
    "KERNEL_BACKEND",
    "LoadWeights",
    "NodeGraph",
    "Placement",
    "PopularityVector",
    "ResultRow",
    "Scenario",
    "SweepSpec",
    "TrafficReport",
    "WeightedGraph",
    "adjacency_tables",
    "all_complete_subgraphs",
    "baseline_lcd",
    "baseline_nocoop",
    "baseline_ul",
    "brute_force_maximal_cliques",
    "build_clique_catalog",
    "build_node_graph",
    "build_weighted_graph",
    "cluster_file_assignment",
    "cluster_popularity",
    "exact_mwis",
    "generate_scenario",
    "global_popularity",
    "greedy_mwis",
    "incremental_traffic",
    "load_scenario",
    "local_popularity",
    "maximal_cliques",
    "offloaded_traffic_cluster",
    "offloaded_traffic_fap",
    "pairwise_metrics",
    "run_single",
    "run_sweep",
    "run_verification",
    "save_scenario",
    "solve",
    "whole_traffic",
    "write_csv",
    "zipf_popularity",
]
