"""Monte-Carlo experiment harness: parameter sweeps over graph families.

For every (parameter, dimension, realization) cell the harness generates a
graph, measures diameter and clustering, embeds it, routes a batch of
messages and records success rate and stretch.  Cell seeds derive from the
master seed and the cell's parameter *values* (not grid positions), so adding
or removing grid points never changes any other cell, and cells can run in
parallel in any order.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from math import sqrt
from typing import Sequence

import numpy as np

from . import rng as rng_mod
from .embedding import EmbeddingConfig, embed
from .generators import BaParams, WsParams, gamma_to_k0, generalized_ba, watts_strogatz
from .graph import Graph, PathLengthDistribution, clustering_coefficient, diameter
from .routing import RouteResult, run_trials, stretch, success_rate

logger = logging.getLogger(__name__)

__all__ = [
    "SweepSpec",
    "CellResult",
    "AggregateRow",
    "SweepResult",
    "PathLengthComparison",
    "run_sweep",
    "run_ws_sweep",
    "run_ba_sweep",
    "ks_statistic",
    "path_length_comparison",
]


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: a family, a parameter grid, dimensions and realization counts."""

    family: str  # "ws" | "ba"
    param_grid: tuple[float, ...]
    dims: tuple[int, ...]
    n: int = 1000
    k: int = 10  # ws lattice degree
    m_links: int = 3  # ba edges per new vertex
    realizations: int = 20
    trials_per_graph: int = 10_000
    master_seed: int = 0
    sync_tolerance: float = 1e-4
    max_iters: int = 100_000

    def __post_init__(self) -> None:
        if self.family not in ("ws", "ba"):
            raise ValueError(f"family must be 'ws' or 'ba', got {self.family!r}")
        if not self.param_grid:
            raise ValueError("parameter grid must be nonempty")
        if not self.dims:
            raise ValueError("dims must be nonempty")
        if self.realizations < 1:
            raise ValueError(f"realizations must be >= 1, got {self.realizations}")
        if self.family == "ws":
            for p in self.param_grid:
                if not 0.0 <= p <= 1.0:
                    raise ValueError(f"rewiring probability {p} outside [0, 1]")
        else:
            for gamma in self.param_grid:
                if gamma <= 2.0:
                    raise ValueError(
                        f"gamma {gamma} needs k0 > -m_links, i.e. gamma > 2"
                    )

    def quick(self) -> "SweepSpec":
        """CI-scale profile: 5 realizations, 2000 routing trials."""
        return replace(self, realizations=5, trials_per_graph=2000)


@dataclass(frozen=True)
class CellResult:
    """Metrics for one (parameter, dim, realization) cell.

    ``stretch`` is None when the cell had zero successful routes; it is never
    silently defaulted.  ``error`` records a failed cell without aborting the
    sweep.  The shortest-path histograms feed the path-length distribution
    files and are not part of the CSV row.
    """

    family: str
    param: float
    dim: int
    realization: int
    seed: int
    n: int
    diameter: int | None = None
    clustering: float | None = None
    success_rate: float | None = None
    stretch: float | None = None
    converged: bool | None = None
    iterations: int | None = None
    error: str | None = None
    all_lengths: dict[int, int] = field(default_factory=dict, compare=False)
    success_lengths: dict[int, int] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class AggregateRow:
    """Across-realization mean and standard error per metric for one (param, dim).

    Metrics are None (serialized NA) when every realization in the group
    failed, or for stretch when no realization had a successful route.
    """

    param: float
    dim: int
    realizations: int
    diameter_mean: float | None
    diameter_stderr: float | None
    clustering_mean: float | None
    clustering_stderr: float | None
    success_rate_mean: float | None
    success_rate_stderr: float | None
    stretch_mean: float | None
    stretch_stderr: float | None
    stretch_defined: int
    converged_count: int


@dataclass
class SweepResult:
    spec: SweepSpec
    cells: list[CellResult]
    aggregates: list[AggregateRow]

    def cell(self, param: float, dim: int, realization: int) -> CellResult:
        for c in self.cells:
            if (c.param, c.dim, c.realization) == (param, dim, realization):
                return c
        raise KeyError((param, dim, realization))

    def aggregate(self, param: float, dim: int) -> AggregateRow:
        for row in self.aggregates:
            if (row.param, row.dim) == (param, dim):
                return row
        raise KeyError((param, dim))


def _cell_graph(spec: SweepSpec, param: float, seed: int) -> Graph:
    if spec.family == "ws":
        return watts_strogatz(WsParams(n=spec.n, k=spec.k, p=param, seed=seed))
    k0 = gamma_to_k0(param, spec.m_links)
    return generalized_ba(BaParams(n=spec.n, m_links=spec.m_links, k0=k0, seed=seed))


def _length_histograms(results: Sequence[RouteResult]) -> tuple[dict[int, int], dict[int, int]]:
    all_hist: dict[int, int] = {}
    success_hist: dict[int, int] = {}
    for r in results:
        all_hist[r.shortest_length] = all_hist.get(r.shortest_length, 0) + 1
        if r.success:
            success_hist[r.shortest_length] = success_hist.get(r.shortest_length, 0) + 1
    return all_hist, success_hist


def _run_cell(args: tuple[SweepSpec, float, int, int]) -> CellResult:
    spec, param, dim, realization = args
    graph_seed = rng_mod.derive_seed(spec.master_seed, rng_mod.GRAPH, param, dim, realization)
    embed_seed = rng_mod.derive_seed(spec.master_seed, rng_mod.EMBED, param, dim, realization)
    route_seed = rng_mod.derive_seed(spec.master_seed, rng_mod.ROUTE, param, dim, realization)
    base = CellResult(
        family=spec.family, param=param, dim=dim, realization=realization,
        seed=graph_seed, n=spec.n,
    )
    try:
        g = _cell_graph(spec, param, graph_seed)
        diam = diameter(g)
        clust = clustering_coefficient(g)
        result = embed(
            g,
            EmbeddingConfig(
                dim=dim,
                sync_tolerance=spec.sync_tolerance,
                max_iters=spec.max_iters,
                seed=embed_seed,
            ),
        )
        trials = run_trials(g, result.positions, spec.trials_per_graph, route_seed)
        rate = success_rate(trials)
        any_success = any(r.success for r in trials)
        all_hist, success_hist = _length_histograms(trials)
        return replace(
            base,
            diameter=diam,
            clustering=clust,
            success_rate=rate,
            stretch=stretch(trials) if any_success else None,
            converged=result.converged,
            iterations=result.iterations,
            all_lengths=all_hist,
            success_lengths=success_hist,
        )
    except Exception as exc:  # record the failure, keep sweeping
        logger.warning("cell (param=%s, dim=%d, realization=%d) failed: %s",
                       param, dim, realization, exc)
        return replace(base, error=str(exc))


def _mean_stderr(values: Sequence[float]) -> tuple[float, float]:
    arr = np.asarray(values, dtype=np.float64)
    mean = float(arr.mean())
    if arr.size < 2:
        return mean, 0.0
    return mean, float(arr.std(ddof=1) / sqrt(arr.size))


def _aggregate(cells: list[CellResult], param: float, dim: int) -> AggregateRow:
    group = [c for c in cells if c.param == param and c.dim == dim and c.error is None]
    if not group:
        logger.warning("every realization failed at (param=%s, dim=%d)", param, dim)
        return AggregateRow(
            param=param, dim=dim, realizations=0,
            diameter_mean=None, diameter_stderr=None,
            clustering_mean=None, clustering_stderr=None,
            success_rate_mean=None, success_rate_stderr=None,
            stretch_mean=None, stretch_stderr=None,
            stretch_defined=0, converged_count=0,
        )
    diam_mean, diam_se = _mean_stderr([c.diameter for c in group])
    clust_mean, clust_se = _mean_stderr([c.clustering for c in group])
    rate_mean, rate_se = _mean_stderr([c.success_rate for c in group])
    stretches = [c.stretch for c in group if c.stretch is not None]
    if stretches:
        stretch_mean, stretch_se = _mean_stderr(stretches)
    else:
        stretch_mean, stretch_se = None, None
    return AggregateRow(
        param=param,
        dim=dim,
        realizations=len(group),
        diameter_mean=diam_mean,
        diameter_stderr=diam_se,
        clustering_mean=clust_mean,
        clustering_stderr=clust_se,
        success_rate_mean=rate_mean,
        success_rate_stderr=rate_se,
        stretch_mean=stretch_mean,
        stretch_stderr=stretch_se,
        stretch_defined=len(stretches),
        converged_count=sum(bool(c.converged) for c in group),
    )


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Run every cell of the sweep, optionally across worker processes.

    The reduction is ordered by (parameter, dim, realization) regardless of
    completion order, so the result is identical for any worker count.
    """
    jobs = [
        (spec, param, dim, realization)
        for param in spec.param_grid
        for dim in spec.dims
        for realization in range(spec.realizations)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(_run_cell, jobs))
    else:
        cells = [_run_cell(job) for job in jobs]
    aggregates = [
        _aggregate(cells, param, dim)
        for param in spec.param_grid
        for dim in spec.dims
    ]
    return SweepResult(spec=spec, cells=cells, aggregates=aggregates)


def run_ws_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Sweep rewiring probabilities on the rewired ring lattice family."""
    if spec.family != "ws":
        raise ValueError(f"expected a ws spec, got family={spec.family!r}")
    return run_sweep(spec, workers=workers)


def run_ba_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Sweep degree exponents on the offset preferential-attachment family."""
    if spec.family != "ba":
        raise ValueError(f"expected a ba spec, got family={spec.family!r}")
    return run_sweep(spec, workers=workers)


@dataclass
class PathLengthComparison:
    """Shortest-path-length distributions of all vs successfully routed pairs."""

    all_pairs: PathLengthDistribution
    success_pairs: PathLengthDistribution
    ks: float | None  # None when no trial succeeded


def ks_statistic(first: PathLengthDistribution, second: PathLengthDistribution) -> float:
    """Two-sample Kolmogorov-Smirnov statistic between two length histograms."""
    if first.total == 0 or second.total == 0:
        raise ValueError("KS statistic needs nonempty distributions")
    support = sorted(set(first.histogram) | set(second.histogram))
    cdf1 = 0.0
    cdf2 = 0.0
    best = 0.0
    for length in support:
        cdf1 += first.histogram.get(length, 0) / first.total
        cdf2 += second.histogram.get(length, 0) / second.total
        best = max(best, abs(cdf1 - cdf2))
    return best


def path_length_comparison(
    g: Graph, coords: np.ndarray, trials: int, route_seed: int
) -> PathLengthComparison:
    """Route ``trials`` random pairs and compare length distributions.

    Returns the histogram of true shortest-path lengths over all sampled
    pairs, the histogram over successfully routed pairs, and the KS statistic
    between the two (None when nothing succeeded).
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    results = run_trials(g, coords, trials, route_seed)
    all_hist, success_hist = _length_histograms(results)
    all_dist = PathLengthDistribution(histogram=all_hist, total=len(results))
    success_total = sum(success_hist.values())
    success_dist = PathLengthDistribution(histogram=success_hist, total=success_total)
    ks = ks_statistic(all_dist, success_dist) if success_total else None
    return PathLengthComparison(all_pairs=all_dist, success_pairs=success_dist, ks=ks)
