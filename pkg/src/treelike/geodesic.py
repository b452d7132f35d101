"""Basic and non-basic edges of the complete graph K_M, and the basic
geodesic graph G_M built from the basic ones.

An edge e(x, y) is non-basic when some chain of other points x1..xk has
d(x,x1) + ... + d(xk,y) = d(x,y).  Any such chain already puts x1 in the
metric interval of (x, y): the triangle inequality bounds the tail of the
chain below by d(x1, y), so d(x,x1) + d(x1,y) <= d(x,y), and equality is
forced.  A single intermediate witness therefore decides the question, and
the whole classification is an O(n^3) scan.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .metric_core import FiniteMetricSpace


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph on labelled vertices ``0..n-1``.

    ``edges`` is kept as sorted ``(i, j, weight)`` triples with ``i < j``.
    """

    labels: tuple[str, ...]
    edges: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self):
        n = len(self.labels)
        norm = []
        for i, j, w in self.edges:
            i, j = int(i), int(j)
            if i > j:
                i, j = j, i
            if i == j or not (0 <= i and j < n):
                raise ValueError(f"bad edge ({i}, {j}) for {n} vertices")
            w = Fraction(w)
            if w <= 0:
                raise ValueError(f"edge ({i}, {j}) has non-positive weight {w}")
            norm.append((i, j, w))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a[:2] == b[:2]:
                raise ValueError(f"duplicate edge {a[:2]}")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def total_weight(self) -> Fraction:
        return sum((w for _, _, w in self.edges), Fraction(0))

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i, j, _ in self.edges)

    def adjacency(self) -> list[list[tuple[int, Fraction]]]:
        adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(self.n)]
        for i, j, w in self.edges:
            adj[i].append((j, w))
            adj[j].append((i, w))
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for i, j, _ in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v, _ in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1 and self.is_connected()

    def is_path(self) -> bool:
        if not self.is_tree():
            return False
        if self.n <= 2:
            return True
        deg = self.degrees()
        return deg.count(1) == 2 and deg.count(2) == self.n - 2


@dataclass(frozen=True)
class EdgeClass:
    edge: tuple[int, int]
    basic: bool
    witness: Optional[int] = None


def complete_graph(M: FiniteMetricSpace) -> WeightedGraph:
    """K_M: every pair of points joined with weight d_M."""
    return WeightedGraph(M.labels, tuple((i, j, M.dist[i][j]) for i, j in M.pairs()))


def classify_edge(M: FiniteMetricSpace, x: int, y: int) -> EdgeClass:
    """Decide whether e(x, y) is basic; a non-basic edge gets the
    lowest-index point lying strictly between its ends."""
    if x == y:
        raise ValueError("an edge needs two distinct endpoints")
    D = M.int_matrix
    between = D[x] + D[y] == D[x, y]
    between[[x, y]] = False
    edge = (min(x, y), max(x, y))
    if between.any():
        return EdgeClass(edge, False, int(np.argmax(between)))
    return EdgeClass(edge, True)


def non_basic_mask(M: FiniteMetricSpace) -> np.ndarray:
    """Boolean n x n matrix, True where e(i, j) is non-basic."""
    D = M.int_matrix
    n = M.n
    out = np.zeros((n, n), dtype=bool)
    for x in range(n):
        # hit[y, z]: z lies on a geodesic from x to y
        hit = D[x][None, :] + D == D[x][:, None]
        hit[:, x] = False
        np.fill_diagonal(hit, False)
        out[x] = hit.any(axis=1)
    out[np.arange(n), np.arange(n)] = False
    return out


def basic_geodesic_graph(M: FiniteMetricSpace) -> WeightedGraph:
    """G_M: the subgraph of K_M on its basic edges, weighted by d_M."""
    nb = non_basic_mask(M)
    edges = tuple((i, j, M.dist[i][j]) for i, j in M.pairs() if not nb[i, j])
    return WeightedGraph(M.labels, edges)


def shortest_path_distances(G: WeightedGraph) -> list[list[Fraction]]:
    """Dijkstra from every vertex.  Raises ValueError if G is disconnected."""
    adj = G.adjacency()
    rows = []
    for s in range(G.n):
        dist: list[Optional[Fraction]] = [None] * G.n
        heap = [(Fraction(0), s)]
        while heap:
            d, u = heapq.heappop(heap)
            if dist[u] is not None:
                continue
            dist[u] = d
            for v, w in adj[u]:
                if dist[v] is None:
                    heapq.heappush(heap, (d + w, v))
        if any(v is None for v in dist):
            raise ValueError("graph is disconnected; its shortest path metric is undefined")
        rows.append(dist)
    return rows


def verify_realisation(
    G: WeightedGraph, M: FiniteMetricSpace
) -> tuple[bool, Optional[tuple[int, int, Fraction, Fraction]]]:
    """Check that shortest paths in G reproduce d_M exactly.

    Returns ``(True, None)`` or ``(False, (i, j, d_G, d_M))`` for the
    lexicographically first mismatching pair.
    """
    if tuple(G.labels) != tuple(M.labels):
        raise ValueError("graph and metric space have different labels")
    dg = shortest_path_distances(G)
    for i, j in M.pairs():
        if dg[i][j] != M.dist[i][j]:
            return False, (i, j, dg[i][j], M.dist[i][j])
    return True, None


def path_order(G: WeightedGraph) -> list[int]:
    """Vertices of a path graph, walked from its lower-index end."""
    if not G.is_path():
        raise ValueError("graph is not a path")
    if G.n == 1:
        return [0]
    adj = G.adjacency()
    start = min(i for i in range(G.n) if len(adj[i]) == 1)
    order, prev = [start], None
    while len(order) < G.n:
        nxt = next(v for v, _ in adj[order[-1]] if v != prev)
        prev = order[-1]
        order.append(nxt)
    return order
