"""Distributed embedding of a graph into an m-dimensional Euclidean space.

Each vertex carries a velocity vector (exchanged with neighbors) and a
position vector (the running sum of its velocities).  One step replaces every
velocity by the plain average of its neighbors' previous velocities, all
vertices simultaneously, then adds the new velocity to the position.  As the
velocities synchronize, positions freeze relative to each other and their
pairwise distances define the hidden metric used for routing.

Termination is variance-based: the run stops once the per-dimension variance
of the velocities drops below a tolerance in every dimension.  Bipartite
graphs oscillate forever and are reported as non-converged rather than
raising.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from . import rng
from .graph import Graph, largest_component

logger = logging.getLogger(__name__)

__all__ = ["EmbeddingConfig", "EmbeddingState", "EmbedResult", "init_state", "step", "sync_error", "embed"]


@dataclass(frozen=True)
class EmbeddingConfig:
    """Knobs for one embedding run."""

    dim: int
    init_half_width: float = 0.5
    sync_tolerance: float = 1e-4
    max_iters: int = 100_000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if self.init_half_width <= 0:
            raise ValueError(f"init_half_width must be positive, got {self.init_half_width}")
        if self.sync_tolerance <= 0:
            raise ValueError(f"sync_tolerance must be positive, got {self.sync_tolerance}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")


@dataclass
class EmbeddingState:
    """Velocities X, positions P (both n x m), step counter, per-dimension errors."""

    velocities: np.ndarray
    positions: np.ndarray
    t: int
    sync_errors: np.ndarray


@dataclass
class EmbedResult:
    """Final positions plus the convergence report.

    ``positions`` has one row per vertex of the input graph; vertices outside
    the embedded component hold NaN.  ``component`` lists the embedded
    vertices in ascending order.
    """

    positions: np.ndarray
    iterations: int
    converged: bool
    sync_errors: np.ndarray
    component: np.ndarray


def sync_error(velocities: np.ndarray) -> np.ndarray:
    """Per-dimension population variance of the velocity rows."""
    return np.var(velocities, axis=0)


def init_state(g: Graph, cfg: EmbeddingConfig) -> EmbeddingState:
    """Velocities i.i.d. uniform on [-w, +w]; positions start equal to velocities."""
    gen = rng.stream(cfg.seed, rng.EMBED)
    w = cfg.init_half_width
    velocities = gen.uniform(-w, w, size=(g.n, cfg.dim))
    return EmbeddingState(
        velocities=velocities,
        positions=velocities.copy(),
        t=0,
        sync_errors=sync_error(velocities),
    )


def _average_neighbors(g: Graph, velocities: np.ndarray) -> np.ndarray:
    """Simultaneous neighbor average of every velocity row."""
    degrees = g.degrees
    if int(degrees.min(initial=1)) == 0:
        isolated = int(np.flatnonzero(degrees == 0)[0])
        raise ValueError(f"vertex {isolated} is isolated; neighbor average undefined")
    flat, offsets = g.flat_adjacency
    sums = np.add.reduceat(velocities[flat], offsets[:-1], axis=0)
    return sums / degrees[:, None]


def step(g: Graph, state: EmbeddingState) -> EmbeddingState:
    """One synchronous update: average neighbor velocities, accumulate positions."""
    velocities = _average_neighbors(g, state.velocities)
    return EmbeddingState(
        velocities=velocities,
        positions=state.positions + velocities,
        t=state.t + 1,
        sync_errors=sync_error(velocities),
    )


def embed(g: Graph, cfg: EmbeddingConfig) -> EmbedResult:
    """Run the dynamics until every dimension's velocity variance is below tolerance.

    Disconnected graphs are embedded on their largest component only (the
    excluded vertices get NaN positions and a warning is logged); routing can
    only ever succeed inside one component anyway.
    """
    component = np.array(sorted(largest_component(g)), dtype=np.int64)
    if component.size < g.n:
        logger.warning(
            "graph is disconnected; embedding largest component (%d of %d vertices)",
            component.size, g.n,
        )
        sub = _induced_subgraph(g, component)
    else:
        sub = g

    state = init_state(sub, cfg)
    converged = bool(state.sync_errors.max() < cfg.sync_tolerance)
    while not converged and state.t < cfg.max_iters:
        state = step(sub, state)
        converged = bool(state.sync_errors.max() < cfg.sync_tolerance)

    positions = np.full((g.n, cfg.dim), np.nan)
    positions[component] = state.positions
    return EmbedResult(
        positions=positions,
        iterations=state.t,
        converged=converged,
        sync_errors=state.sync_errors,
        component=component,
    )


def _induced_subgraph(g: Graph, vertices: np.ndarray) -> Graph:
    """Subgraph induced by ``vertices``, relabeled to 0..len-1 in sorted order."""
    index = {int(v): i for i, v in enumerate(vertices)}
    adjacency = tuple(
        tuple(index[j] for j in g.adjacency[int(v)] if j in index) for v in vertices
    )
    return Graph(adjacency)
