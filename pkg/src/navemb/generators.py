"""Seeded generators for the two network families under study.

* Ring lattices rewired at probability ``p`` (small-world construction):
  every vertex starts linked to its ``k`` nearest ring neighbors; each
  lattice edge is visited once and, with probability ``p``, its far endpoint
  is reattached to a uniformly random vertex.
* Preferential attachment with an additive degree offset ``k0``: each new
  vertex attaches to ``m_links`` existing vertices with probability
  proportional to ``degree + k0``, which tunes the degree exponent to
  ``3 + k0 / m_links``.

Both generators are pure functions of their parameters including the seed:
same parameters, same edge set.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .rng import stream

__all__ = [
    "WsParams",
    "BaParams",
    "ring_lattice",
    "watts_strogatz",
    "generalized_ba",
    "gamma_to_k0",
    "fit_degree_exponent",
]


@dataclass(frozen=True)
class WsParams:
    """Rewired ring lattice: n vertices, even lattice degree k, rewiring probability p."""

    n: int
    k: int
    p: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.k % 2 != 0:
            raise ValueError(f"k must be even, got {self.k}")
        if not 0 < self.k < self.n:
            raise ValueError(f"need 0 < k < n, got k={self.k}, n={self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"rewiring probability must be in [0, 1], got {self.p}")


@dataclass(frozen=True)
class BaParams:
    """Preferential attachment: n vertices, m_links edges per new vertex, offset k0."""

    n: int
    m_links: int
    k0: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.m_links < 1:
            raise ValueError(f"m_links must be >= 1, got {self.m_links}")
        if self.k0 <= -self.m_links:
            raise ValueError(
                f"k0 must exceed -m_links to keep attachment weights positive, "
                f"got k0={self.k0}, m_links={self.m_links}"
            )
        if self.n <= self.m_links:
            raise ValueError(f"need n > m_links, got n={self.n}, m_links={self.m_links}")


def ring_lattice(n: int, k: int) -> Graph:
    """Ring of ``n`` vertices, each adjacent to its ``k`` nearest neighbors (k even)."""
    if k % 2 != 0:
        raise ValueError(f"k must be even, got {k}")
    if not 0 < k < n:
        raise ValueError(f"need 0 < k < n, got k={k}, n={n}")
    half = k // 2
    adjacency = []
    for i in range(n):
        nbrs = sorted((i + off) % n for off in range(-half, half + 1) if off != 0)
        adjacency.append(tuple(nbrs))
    return Graph(tuple(adjacency))


def watts_strogatz(params: WsParams) -> Graph:
    """Rewire each lattice edge's far endpoint with probability p.

    Lattice edges are visited in deterministic order (source ascending, then
    clockwise offset 1..k/2).  Rewiring keeps the near endpoint, resamples the
    target until it is neither the source nor an existing neighbor, and
    preserves the edge count exactly.  A source already adjacent to every
    other vertex keeps its edge (no valid target exists).
    """
    n, k = params.n, params.k
    rng = stream(params.seed)
    neighbor_sets = [set(nbrs) for nbrs in ring_lattice(n, k).adjacency]
    for i in range(n):
        for off in range(1, k // 2 + 1):
            j = (i + off) % n
            if rng.random() >= params.p:
                continue
            if len(neighbor_sets[i]) >= n - 1:
                continue  # saturated source: rewiring impossible
            while True:
                target = int(rng.integers(n))
                if target != i and target not in neighbor_sets[i]:
                    break
            neighbor_sets[i].remove(j)
            neighbor_sets[j].remove(i)
            neighbor_sets[i].add(target)
            neighbor_sets[target].add(i)
    return Graph(tuple(tuple(sorted(s)) for s in neighbor_sets))


def generalized_ba(params: BaParams) -> Graph:
    """Grow a graph by preferential attachment with weight ``degree + k0``.

    Seed graph: complete graph on m_links + 1 vertices, so every early
    attachment has positive weight and the result is connected.  Each new
    vertex picks m_links distinct targets sequentially, removing picked
    targets from the pool (weights renormalize implicitly).
    """
    n, m, k0 = params.n, params.m_links, params.k0
    rng = stream(params.seed)
    degrees = np.zeros(n, dtype=np.int64)
    degrees[: m + 1] = m
    edges = [(u, v) for u in range(m + 1) for v in range(u + 1, m + 1)]
    for v in range(m + 1, n):
        weights = degrees[:v].astype(np.float64) + k0
        targets = []
        for _ in range(m):
            cumulative = np.cumsum(weights)
            r = rng.random() * cumulative[-1]
            t = int(np.searchsorted(cumulative, r, side="right"))
            if t >= v:  # guard the r == total float edge case
                t = v - 1
            targets.append(t)
            weights[t] = 0.0
        for t in targets:
            edges.append((t, v))
            degrees[t] += 1
        degrees[v] = m
    return Graph.from_edges(n, edges)


def gamma_to_k0(gamma: float, m_links: int) -> float:
    """Invert the degree-exponent relation: k0 = (gamma - 3) * m_links."""
    if gamma <= 2.0:
        raise ValueError(
            f"gamma must exceed 2 (k0 would not exceed -m_links), got {gamma}"
        )
    return (gamma - 3.0) * m_links


def _log_pmf(gamma: float, shift: float, k_min: int, k_max: int) -> np.ndarray:
    """Log-pmf of the attachment-process degree law on [k_min, k_max].

    The stationary distribution of offset preferential attachment satisfies
    p(k) / p(k-1) = (k - 1 + shift) / (k - 1 + shift + gamma), i.e. a
    falling-factorial power law that decays as (k + shift)^-gamma.
    """
    if k_min + shift <= 0.0:
        raise ValueError(f"need k_min + shift > 0, got k_min={k_min}, shift={shift}")
    ks = np.arange(k_min + 1, k_max + 1, dtype=np.float64)
    log_ratios = np.log(ks - 1.0 + shift) - np.log(ks - 1.0 + shift + gamma)
    log_p = np.concatenate(([0.0], np.cumsum(log_ratios)))
    # log_p[0] = 0 and decreasing, so exp() is safe; the truncated tail is
    # approximated by its integral ~ p(k_max) * (k_max + shift) / (gamma - 1)
    tail = math.exp(log_p[-1]) * (k_max + shift) / (gamma - 1.0)
    return log_p - math.log(np.exp(log_p).sum() + tail)


def fit_degree_exponent(
    degrees: np.ndarray | list[int],
    k_min: int,
    shift: float = 0.0,
    gamma_bounds: tuple[float, float] = (2.01, 8.0),
) -> float:
    """Maximum-likelihood degree exponent over the tail ``k >= k_min``.

    Fits the discrete power-law family generated by offset preferential
    attachment (asymptotically ``(k + shift)^-gamma``) by golden-section
    search on the log-likelihood.  With shift=0 this is the plain discrete
    power-law MLE up to falling-factorial small-k corrections.
    """
    ks = np.asarray(degrees, dtype=np.int64)
    ks = ks[ks >= k_min]
    if ks.size == 0:
        raise ValueError(f"no degrees >= k_min={k_min} to fit")
    values, counts = np.unique(ks, return_counts=True)
    k_max = int(values[-1]) * 10 + 1000
    index = values - k_min  # positions of observed degrees in the pmf table

    def neg_log_likelihood(gamma: float) -> float:
        log_p = _log_pmf(gamma, shift, k_min, k_max)
        return -float(np.dot(counts, log_p[index]))

    lo, hi = gamma_bounds
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = neg_log_likelihood(c), neg_log_likelihood(d)
    while b - a > 1e-6:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = neg_log_likelihood(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = neg_log_likelihood(d)
    return (a + b) / 2.0
