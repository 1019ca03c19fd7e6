"""Self-organized embedding of networks into a hidden Euclidean metric space,
greedy routing over the embedded coordinates, and the navigability experiment
harness built on top of them."""

__version__ = "0.1.0"

from .graph import (
    Graph,
    PathLengthDistribution,
    UNREACHABLE,
    bfs_distances,
    clustering_coefficient,
    connected_components,
    diameter,
    largest_component,
    shortest_path_distribution,
)
from .generators import (
    BaParams,
    WsParams,
    fit_degree_exponent,
    gamma_to_k0,
    generalized_ba,
    ring_lattice,
    watts_strogatz,
)
from .embedding import EmbeddingConfig, EmbeddingState, EmbedResult, embed, init_state, step, sync_error
from .spectral import (
    EnergyReport,
    SpectralDecomposition,
    closed_form_positions,
    coefficients,
    decompose,
    energy_relation_check,
    exact_distance,
    expected_distance,
)
from .routing import RouteResult, greedy_route, run_trials, stretch, success_rate
from .experiments import (
    AggregateRow,
    CellResult,
    PathLengthComparison,
    SweepResult,
    SweepSpec,
    ks_statistic,
    path_length_comparison,
    run_ba_sweep,
    run_sweep,
    run_ws_sweep,
)

__all__ = [
    "Graph",
    "PathLengthDistribution",
    "UNREACHABLE",
    "bfs_distances",
    "clustering_coefficient",
    "connected_components",
    "diameter",
    "largest_component",
    "shortest_path_distribution",
    "BaParams",
    "WsParams",
    "fit_degree_exponent",
    "gamma_to_k0",
    "generalized_ba",
    "ring_lattice",
    "watts_strogatz",
    "EmbeddingConfig",
    "EmbeddingState",
    "EmbedResult",
    "embed",
    "init_state",
    "step",
    "sync_error",
    "EnergyReport",
    "SpectralDecomposition",
    "closed_form_positions",
    "coefficients",
    "decompose",
    "energy_relation_check",
    "exact_distance",
    "expected_distance",
    "RouteResult",
    "greedy_route",
    "run_trials",
    "stretch",
    "success_rate",
    "AggregateRow",
    "CellResult",
    "PathLengthComparison",
    "SweepResult",
    "SweepSpec",
    "ks_statistic",
    "path_length_comparison",
    "run_ba_sweep",
    "run_sweep",
    "run_ws_sweep",
    "__version__",
]
