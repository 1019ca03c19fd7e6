"""Undirected simple-graph container and the topology measurements used
throughout the package: BFS distances, diameter, clustering coefficient,
connected components and shortest-path-length histograms.

Vertices are dense integers ``[0, n)``.  Adjacency lists are kept sorted so
every downstream iteration order (and therefore every tie-break) is
deterministic.  Graphs are immutable after construction and safe to share
across worker processes.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

logger = logging.getLogger(__name__)

#: Sentinel distance for vertices outside the BFS source's component.
UNREACHABLE = -1


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph in adjacency-list form."""

    adjacency: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @cached_property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([len(nbrs) for nbrs in self.adjacency], dtype=np.int64)

    @cached_property
    def flat_adjacency(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR-style view: (concatenated neighbor ids, row offsets of length n+1)."""
        offsets = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self.degrees, out=offsets[1:])
        flat = np.fromiter(
            (j for nbrs in self.adjacency for j in nbrs),
            dtype=np.int64,
            count=int(offsets[-1]),
        )
        return flat, offsets

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> Iterable[tuple[int, int]]:
        """All edges as (u, v) with u < v, sorted lexicographically."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build and validate a graph from an edge list."""
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        neighbor_sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if v in neighbor_sets[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
        return Graph(tuple(tuple(sorted(s)) for s in neighbor_sets))

    def validate(self) -> None:
        """Assert simplicity, symmetry and sortedness; raises ValueError."""
        for u, nbrs in enumerate(self.adjacency):
            prev = -1
            for v in nbrs:
                if not 0 <= v < self.n:
                    raise ValueError(f"neighbor {v} of {u} out of range")
                if v == u:
                    raise ValueError(f"self-loop at vertex {u}")
                if v <= prev:
                    raise ValueError(f"adjacency of {u} not sorted/duplicate-free")
                prev = v
                if u not in self.adjacency[v]:
                    raise ValueError(f"asymmetric edge ({u}, {v})")


@dataclass(frozen=True)
class PathLengthDistribution:
    """Histogram of hop counts, plus how many queried pairs were unreachable."""

    histogram: dict[int, int] = field(default_factory=dict)
    total: int = 0
    unreachable: int = 0

    def normalized(self) -> dict[int, float]:
        if self.total == 0:
            return {}
        return {length: count / self.total for length, count in sorted(self.histogram.items())}


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Hop distances from ``source`` to every vertex (UNREACHABLE outside its component)."""
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range for n={g.n}")
    dist = np.full(g.n, UNREACHABLE, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    adjacency = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adjacency[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


def connected_components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest member."""
    seen = np.zeros(g.n, dtype=bool)
    components: list[list[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comp.sort()
        components.append(comp)
    return components


def largest_component(g: Graph) -> set[int]:
    """Vertex set of a maximum-cardinality component (ties: smallest member id wins)."""
    best: list[int] | None = None
    for comp in connected_components(g):
        # components arrive ordered by smallest member, so strict > keeps the tie-break
        if best is None or len(comp) > len(best):
            best = comp
    return set(best) if best is not None else set()


def diameter(g: Graph) -> int:
    """Maximum pairwise hop distance inside the largest component (all-pairs BFS)."""
    if g.n < 2:
        raise ValueError(f"diameter needs at least 2 vertices, got {g.n}")
    components = connected_components(g)
    comp = max(components, key=len)
    if len(components) > 1:
        logger.warning(
            "graph has %d components; diameter computed on the largest (%d of %d vertices)",
            len(components), len(comp), g.n,
        )
    best = 0
    for source in comp:
        dist = bfs_distances(g, source)
        ecc = int(dist[comp].max()) if len(comp) > 1 else 0
        if ecc > best:
            best = ecc
    return best


def clustering_coefficient(g: Graph) -> float:
    """Average local clustering; vertices of degree < 2 contribute 0."""
    if g.n == 0:
        return 0.0
    neighbor_sets = [set(nbrs) for nbrs in g.adjacency]
    total = 0.0
    for u, nbrs in enumerate(g.adjacency):
        d = len(nbrs)
        if d < 2:
            continue
        links = 0
        for i, v in enumerate(nbrs):
            sv = neighbor_sets[v]
            for w in nbrs[i + 1:]:
                if w in sv:
                    links += 1
        total += 2.0 * links / (d * (d - 1))
    return total / g.n


def shortest_path_distribution(
    g: Graph, pairs: Sequence[tuple[int, int]]
) -> PathLengthDistribution:
    """Histogram of BFS distances for the given (source, target) pairs.

    Unreachable pairs are excluded from the histogram and counted separately.
    BFS results are cached per source, so repeated sources cost one traversal.
    """
    histogram: dict[int, int] = {}
    unreachable = 0
    total = 0
    cache: dict[int, np.ndarray] = {}
    for source, target in pairs:
        if source == target:
            raise ValueError(f"pair ({source}, {target}) has source == target")
        if not (0 <= source < g.n and 0 <= target < g.n):
            raise ValueError(f"pair ({source}, {target}) out of range for n={g.n}")
        dist = cache.get(source)
        if dist is None:
            dist = bfs_distances(g, source)
            cache[source] = dist
        d = int(dist[target])
        if d == UNREACHABLE:
            unreachable += 1
        else:
            histogram[d] = histogram.get(d, 0) + 1
            total += 1
    return PathLengthDistribution(histogram=histogram, total=total, unreachable=unreachable)
