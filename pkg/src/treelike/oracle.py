"""Brute-force oracles and seeded metric generators.

Nothing here calls into the fast paths it is used to check: shortest paths
use Floyd-Warshall (the library uses Dijkstra), spanning trees come from
decoding every Pruefer sequence, tours from every permutation, and edge
classes from every ordered chain of intermediate points.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Optional

import numpy as np

from .geodesic import WeightedGraph
from .metric_core import FiniteMetricSpace, MetricError

MST_CAP = 8
TSP_CAP = 10
EDGE_CAP = 6

KINDS = ("tree", "euclidean", "l1", "perturbed-tree")


class GenerationError(RuntimeError):
    pass


def _ints(M: FiniteMetricSpace) -> tuple[list[list[int]], int]:
    scale = math.lcm(*(v.denominator for row in M.dist for v in row))
    return [[v.numerator * (scale // v.denominator) for v in row] for row in M.dist], scale


def apsp(G: WeightedGraph) -> list[list[Fraction]]:
    """Floyd-Warshall over exact rationals.  Raises on a disconnected graph."""
    n = G.n
    d: list[list[Optional[Fraction]]] = [[None] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = Fraction(0)
    for i, j, w in G.edges:
        d[i][j] = d[j][i] = w
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik is None:
                continue
            di = d[i]
            for j in range(n):
                if dk[j] is None:
                    continue
                alt = dik + dk[j]
                if di[j] is None or alt < di[j]:
                    di[j] = alt
    if any(v is None for row in d for v in row):
        raise ValueError("graph is disconnected")
    return d  # type: ignore[return-value]


@lru_cache(maxsize=None)
def _decode_all_pruefer(n: int) -> np.ndarray:
    """Edge arrays (N, n-1, 2) for all n**(n-2) labelled trees on n vertices.

    Cached per n and returned read-only.
    """
    if n == 1:
        return np.zeros((1, 0, 2), dtype=np.int64)
    if n == 2:
        return np.array([[[0, 1]]], dtype=np.int64)
    seqs = np.array(list(product(range(n), repeat=n - 2)), dtype=np.int64)
    N = len(seqs)
    rows = np.arange(N)
    deg = 1 + (seqs[:, :, None] == np.arange(n)).sum(axis=1)
    edges = np.empty((N, n - 1, 2), dtype=np.int64)
    for k in range(n - 2):
        leaf = np.argmax(deg == 1, axis=1)
        parent = seqs[:, k]
        edges[:, k, 0] = leaf
        edges[:, k, 1] = parent
        deg[rows, leaf] -= 1
        deg[rows, parent] -= 1
    ones = deg == 1
    edges[:, n - 2, 0] = np.argmax(ones, axis=1)
    edges[:, n - 2, 1] = n - 1 - np.argmax(ones[:, ::-1], axis=1)
    edges.flags.writeable = False
    return edges


def enumerate_min_spanning_trees(M: FiniteMetricSpace, cap: int = MST_CAP) -> list[WeightedGraph]:
    """Every minimum-weight spanning tree of K_M, found by exhaustion."""
    if M.n > cap:
        raise ValueError(f"exhaustive tree enumeration is capped at n={cap}, got {M.n}")
    D, _ = _ints(M)
    edges = _decode_all_pruefer(M.n)
    W = np.array(D, dtype=object if max(map(max, D)) * M.n > 2**62 else np.int64)
    totals = W[edges[:, :, 0], edges[:, :, 1]].sum(axis=1)
    best = totals.min()
    trees = []
    for k in np.flatnonzero(totals == best):
        trees.append(WeightedGraph(M.labels, tuple(
            (int(i), int(j), M.dist[int(i)][int(j)]) for i, j in edges[k]
        )))
    return sorted(trees, key=lambda t: t.edges)


def brute_force_tsp(M: FiniteMetricSpace, cap: int = TSP_CAP) -> Fraction:
    """Length of the shortest closed tour, trying all (n-1)!/2 of them."""
    n = M.n
    if not 3 <= n <= cap:
        raise ValueError(f"brute-force TSP needs 3 <= n <= {cap}, got {n}")
    D, scale = _ints(M)
    best = None
    for perm in permutations(range(1, n)):
        if perm[0] > perm[-1]:
            continue  # the reversed tour has the same length
        total = D[0][perm[0]] + D[perm[-1]][0]
        for a, b in zip(perm, perm[1:]):
            total += D[a][b]
        if best is None or total < best:
            best = total
    return Fraction(best, scale)


def brute_force_edge_class(M: FiniteMetricSpace, x: int, y: int, cap: int = EDGE_CAP) -> bool:
    """True if e(x, y) is basic: no ordered chain of other points between x
    and y has total length d(x, y)."""
    if M.n > cap:
        raise ValueError(f"chain enumeration is capped at n={cap}, got {M.n}")
    if x == y:
        raise ValueError("an edge needs two distinct endpoints")
    others = [i for i in range(M.n) if i not in (x, y)]
    target = M.dist[x][y]
    for k in range(1, len(others) + 1):
        for chain in permutations(others, k):
            walk = (x, *chain, y)
            if sum(M.dist[a][b] for a, b in zip(walk, walk[1:])) == target:
                return False
    return True


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    seed: int
    weight_range: tuple[Fraction, Fraction] = (Fraction(1), Fraction(100))
    dim: int = 2
    perturbation: Fraction = Fraction(1, 10)
    # perturbed-tree noise is drawn from [noise_floor, perturbation];
    # the default floor of perturbation/2 always yields a metric
    noise_floor: Optional[Fraction] = None
    resolution: int = 10**6
    sqrt_digits: int = 12
    max_retries: int = 100
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}; expected one of {KINDS}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        lo, hi = (Fraction(v) for v in self.weight_range)
        if not 0 < lo <= hi:
            raise ValueError("weight range must be a positive interval")
        object.__setattr__(self, "weight_range", (lo, hi))
        if self.dim < 1:
            raise ValueError("dim must be >= 1")


def _draw(rng: random.Random, lo: Fraction, hi: Fraction, res: int) -> Fraction:
    return Fraction(rng.randint(math.ceil(lo * res), math.floor(hi * res)), res)


def random_pruefer_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Uniform labelled tree on ``range(n)`` via a random Pruefer sequence."""
    if n == 1:
        return []
    seq = [rng.randrange(n) for _ in range(n - 2)]
    deg = [1] * n
    for v in seq:
        deg[v] += 1
    edges = []
    for v in seq:
        leaf = next(i for i in range(n) if deg[i] == 1)
        edges.append((min(leaf, v), max(leaf, v)))
        deg[leaf] -= 1
        deg[v] -= 1
    u, w = [i for i in range(n) if deg[i] == 1]
    edges.append((u, w))
    return edges


def tree_metric(n: int, edges: list[tuple[int, int, Fraction]]) -> list[list[Fraction]]:
    adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(n)]
    for i, j, w in edges:
        adj[i].append((j, w))
        adj[j].append((i, w))
    rows = []
    for s in range(n):
        d: list[Optional[Fraction]] = [None] * n
        d[s] = Fraction(0)
        stack = [s]
        while stack:
            u = stack.pop()
            for v, w in adj[u]:
                if d[v] is None:
                    d[v] = d[u] + w
                    stack.append(v)
        rows.append(d)
    return rows


def _random_tree(spec: GeneratorSpec, rng: random.Random):
    topo = random_pruefer_tree(spec.n, rng)
    lo, hi = spec.weight_range
    weights: list[Fraction] = []
    while len(weights) < len(topo):
        w = _draw(rng, lo, hi, spec.resolution)
        if w not in weights:
            weights.append(w)
    edges = [(i, j, w) for (i, j), w in zip(topo, weights)]
    return edges, tree_metric(spec.n, edges)


def _sqrt_approx(q: Fraction, digits: int) -> Fraction:
    scale = 10**digits
    return Fraction(math.isqrt(q.numerator * scale * scale // q.denominator), scale)


def _points(spec: GeneratorSpec, rng: random.Random) -> list[list[Fraction]]:
    lo, hi = spec.weight_range
    return [[_draw(rng, lo, hi, spec.resolution) for _ in range(spec.dim)] for _ in range(spec.n)]


def generate(spec: GeneratorSpec) -> tuple[FiniteMetricSpace, Optional[WeightedGraph]]:
    """Deterministic random metric space; trees also return the generator tree."""
    rng = random.Random(spec.seed)
    labels = spec.labels or tuple(f"p{i}" for i in range(spec.n))
    n = spec.n
    tree = None
    for _ in range(spec.max_retries):
        if spec.kind == "tree":
            edges, dist = _random_tree(spec, rng)
            tree = WeightedGraph(labels, tuple(edges))
        elif spec.kind == "perturbed-tree":
            _, dist = _random_tree(spec, rng)
            mag = spec.perturbation
            floor = mag / 2 if spec.noise_floor is None else spec.noise_floor
            for i in range(n):
                for j in range(i + 1, n):
                    u = Fraction(rng.randint(0, spec.resolution), spec.resolution)
                    dist[i][j] += floor + (mag - floor) * u
                    dist[j][i] = dist[i][j]
        elif spec.kind == "l1":
            pts = _points(spec, rng)
            dist = [[sum((abs(a - b) for a, b in zip(p, q)), Fraction(0)) for q in pts] for p in pts]
        else:
            pts = _points(spec, rng)
            dist = [
                [_sqrt_approx(sum(((a - b) ** 2 for a, b in zip(p, q)), Fraction(0)), spec.sqrt_digits)
                 for q in pts]
                for p in pts
            ]
        try:
            return FiniteMetricSpace(labels, dist), tree
        except MetricError:
            continue
    raise GenerationError(
        f"no valid {spec.kind} metric after {spec.max_retries} attempts (seed {spec.seed})"
    )
