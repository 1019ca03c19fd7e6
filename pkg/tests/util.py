"""Shared helpers for the test suite: random graph factories and oracles."""
from __future__ import annotations

import numpy as np

from navemb import Graph, largest_component


def pairwise_distances(coords: np.ndarray) -> np.ndarray:
    deltas = coords[:, None, :] - coords[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", deltas, deltas))


def is_bipartite(g: Graph) -> bool:
    """Two-coloring check, independent of any spectral machinery."""
    color = np.full(g.n, -1, dtype=np.int64)
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for v in g.adjacency[u]:
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    stack.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def random_graph(n: int, edge_prob: float, rng: np.random.Generator) -> Graph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < edge_prob
    ]
    return Graph.from_edges(n, edges)


def random_connected_graph(n: int, rng: np.random.Generator, density: float = 2.5) -> Graph:
    """Erdos-Renyi rejection sampling until connected (density * ln(n)/n edge prob)."""
    p = min(1.0, density * np.log(max(n, 2)) / n)
    while True:
        g = random_graph(n, p, rng)
        if len(largest_component(g)) == n and min(g.degrees) >= 1:
            return g


def random_connected_nonbipartite(n: int, rng: np.random.Generator) -> Graph:
    while True:
        g = random_connected_graph(n, rng)
        if not is_bipartite(g):
            return g
