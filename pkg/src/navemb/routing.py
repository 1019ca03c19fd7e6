"""Greedy routing over embedded coordinates.

A message at some vertex moves to whichever unvisited neighbor sits closest
to the target in the metric space (Euclidean distance, ties broken uniformly
at random).  Vertices already on the path are off limits, so a route either
reaches the target or strands at a vertex whose neighbors were all visited.
Navigation is directional: routing i -> j and j -> i are distinct trials.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rng as rng_mod
from .graph import Graph, bfs_distances, largest_component

__all__ = ["RouteResult", "greedy_route", "run_trials", "success_rate", "stretch"]

REACHED_TARGET = "reached_target"
ALL_NEIGHBORS_VISITED = "all_neighbors_visited"


@dataclass(frozen=True)
class RouteResult:
    """Outcome of one greedy-routing trial."""

    source: int
    target: int
    success: bool
    hops: tuple[int, ...]
    shortest_length: int
    termination_reason: str

    @property
    def path_length(self) -> int:
        return len(self.hops) - 1

    @property
    def stretch_ratio(self) -> float:
        if not self.success:
            raise ValueError("stretch is only defined for successful routes")
        return self.path_length / self.shortest_length


def greedy_route(
    g: Graph,
    coords: np.ndarray,
    source: int,
    target: int,
    rng: np.random.Generator,
    shortest_length: int | None = None,
) -> RouteResult:
    """Route one message from source toward target over the coordinates.

    ``shortest_length`` may be supplied from a cached BFS; otherwise one BFS
    from the source computes it.
    """
    if source == target:
        raise ValueError("source and target must differ")
    if not (0 <= source < g.n and 0 <= target < g.n):
        raise ValueError(f"vertex ids ({source}, {target}) out of range for n={g.n}")
    target_pos = coords[target]
    if not (np.isfinite(coords[source]).all() and np.isfinite(target_pos).all()):
        raise ValueError("source and target must lie in the embedded component")
    if shortest_length is None:
        shortest_length = int(bfs_distances(g, source)[target])

    hops = [source]
    visited = {source}
    current = source
    while True:
        if current == target:
            return RouteResult(
                source=source,
                target=target,
                success=True,
                hops=tuple(hops),
                shortest_length=shortest_length,
                termination_reason=REACHED_TARGET,
            )
        candidates = [v for v in g.adjacency[current] if v not in visited]
        if not candidates:
            return RouteResult(
                source=source,
                target=target,
                success=False,
                hops=tuple(hops),
                shortest_length=shortest_length,
                termination_reason=ALL_NEIGHBORS_VISITED,
            )
        deltas = coords[candidates] - target_pos
        sq_dist = np.einsum("ij,ij->i", deltas, deltas)
        best = sq_dist.min()
        ties = np.flatnonzero(sq_dist == best)
        pick = int(ties[0]) if ties.size == 1 else int(ties[rng.integers(ties.size)])
        current = candidates[pick]
        visited.add(current)
        hops.append(current)


def run_trials(
    g: Graph,
    coords: np.ndarray,
    n_trials: int,
    master_seed: int,
) -> list[RouteResult]:
    """Route ``n_trials`` uniformly sampled ordered pairs from the embedded component.

    Pair sampling and each trial's tie-break stream derive from
    ``master_seed`` by trial index, so outcomes are independent of execution
    order and reproducible.
    """
    component = sorted(largest_component(g))
    if len(component) < 2:
        raise ValueError("embedded component needs at least 2 vertices")
    comp = np.array(component, dtype=np.int64)
    pair_rng = rng_mod.stream(master_seed, rng_mod.ROUTE)
    bfs_cache: dict[int, np.ndarray] = {}
    results: list[RouteResult] = []
    for trial in range(n_trials):
        source = int(comp[pair_rng.integers(comp.size)])
        target = int(comp[pair_rng.integers(comp.size)])
        while target == source:
            target = int(comp[pair_rng.integers(comp.size)])
        dist = bfs_cache.get(source)
        if dist is None:
            dist = bfs_distances(g, source)
            bfs_cache[source] = dist
        trial_rng = rng_mod.stream(master_seed, rng_mod.TRIAL, trial)
        results.append(
            greedy_route(
                g, coords, source, target, trial_rng, shortest_length=int(dist[target])
            )
        )
    return results


def success_rate(results: list[RouteResult]) -> float:
    """Fraction of trials that reached their target."""
    if not results:
        raise ValueError("success_rate needs at least one trial")
    return sum(r.success for r in results) / len(results)


def stretch(results: list[RouteResult]) -> float:
    """Mean ratio of routed to shortest path length over successful trials."""
    ratios = [r.stretch_ratio for r in results if r.success]
    if not ratios:
        raise ValueError("stretch is undefined: no successful trials")
    return sum(ratios) / len(ratios)
