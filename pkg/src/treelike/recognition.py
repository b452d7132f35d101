"""Spanning tree and spanning path metric spaces.

The decision is made on G_M directly: it is always connected, so it is a
tree exactly when it has n - 1 edges.  When all distances are distinct the
fourth-point condition must agree with that answer (and the three-point
condition with the path answer); a disagreement is a bug and raises
:class:`ConsistencyError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .conditions import fourth_point_condition, three_point_condition
from .geodesic import WeightedGraph, basic_geodesic_graph, complete_graph, verify_realisation
from .metric_core import FiniteMetricSpace, check_tie_breaking


class ConsistencyError(AssertionError):
    """Two independent routes to the same verdict disagreed."""


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def mst(K: WeightedGraph) -> tuple[WeightedGraph, bool]:
    """Kruskal over edges in (weight, i, j) order.

    Returns the tree and whether it is certified unique (all edge weights
    distinct).  Raises ValueError if K is disconnected.
    """
    uf = UnionFind(K.n)
    chosen = []
    for i, j, w in sorted(K.edges, key=lambda e: (e[2], e[0], e[1])):
        if uf.union(i, j):
            chosen.append((i, j, w))
            if len(chosen) == K.n - 1:
                break
    if len(chosen) != max(K.n - 1, 0):
        raise ValueError("graph is disconnected; it has no spanning tree")
    weights = [w for _, _, w in K.edges]
    return WeightedGraph(K.labels, tuple(chosen)), len(set(weights)) == len(weights)


@dataclass(frozen=True)
class CrossCheck:
    fourth_point: bool
    three_point: bool
    equivalence_consistent: bool


@dataclass(frozen=True)
class RecognitionVerdict:
    is_spanning_tree_metric: bool
    is_spanning_path_metric: bool
    realizing_graph: Optional[WeightedGraph]
    tie_breaking: bool
    cross_check: CrossCheck
    basic_graph: WeightedGraph


def recognize(M: FiniteMetricSpace, jobs: Optional[int] = None) -> RecognitionVerdict:
    G = basic_geodesic_graph(M)
    is_tree = len(G.edges) == M.n - 1
    is_path = is_tree and G.is_path()
    tie = check_tie_breaking(M, limit=1).holds
    fourth = fourth_point_condition(M, jobs).holds
    three = three_point_condition(M, jobs).holds

    if tie:
        if fourth != is_tree:
            raise ConsistencyError(
                f"fourth-point condition says {fourth} but G_M tree test says {is_tree}"
            )
        if three != is_path:
            raise ConsistencyError(
                f"three-point condition says {three} but G_M path test says {is_path}"
            )
    if three and not fourth:
        raise ConsistencyError("three-point condition holds but fourth-point fails")

    if is_tree:
        T, _ = mst(complete_graph(M))
        if T.edges != G.edges:
            raise ConsistencyError("G_M is a tree but differs from the Kruskal MST")
        ok, bad = verify_realisation(G, M)
        if not ok:
            raise ConsistencyError(f"G_M does not realise M at {bad}")

    return RecognitionVerdict(
        is_spanning_tree_metric=is_tree,
        is_spanning_path_metric=is_path,
        realizing_graph=G if is_tree else None,
        tie_breaking=tie,
        cross_check=CrossCheck(fourth, three, (not tie) or fourth == is_tree),
        basic_graph=G,
    )


def farthest_pair(M: FiniteMetricSpace) -> tuple[int, int]:
    """Lexicographically first pair at maximum distance (n >= 2)."""
    best = None
    for i, j in M.pairs():
        if best is None or M.dist[i][j] > M.dist[best[0]][best[1]]:
            best = (i, j)
    if best is None:
        raise ValueError("need at least two points")
    return best


def recognize_path(M: FiniteMetricSpace) -> Optional[WeightedGraph]:
    """The spanning path realising M, or None.

    Points are ordered by distance from the smaller endpoint of the farthest
    pair.  The candidate is always checked against M, so inputs with tied
    distances that defeat the construction return None.
    """
    if M.n == 1:
        return WeightedGraph(M.labels, ())
    if not three_point_condition(M).holds:
        return None
    s, _ = farthest_pair(M)
    order = sorted(range(M.n), key=lambda i: (M.dist[s][i], i))
    path = WeightedGraph(M.labels, tuple((a, b, M.dist[a][b]) for a, b in zip(order, order[1:])))
    ok, _ = verify_realisation(path, M)
    return path if ok else None
