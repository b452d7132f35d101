"""Median, fourth-point and three-point conditions, and the deviation
measures built on them (roundaboutness, path deviance, hyperbolicity).

All scans run on the space's scaled integer matrix, so every equality and
every maximum is exact.  Triplets are visited as ``x < y < z`` in
lexicographic order; degenerate triplets (a repeated point) always admit a
median and never contribute to a deviation, so they are skipped.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from ._parallel import map_rows
from .metric_core import FiniteMetricSpace, decimal_string

Triplet = tuple[int, int, int]

# elements per temporary block in the triplet and quadruple scans
_BLOCK = 1 << 22


@dataclass(frozen=True)
class ConditionResult:
    """Verdict of a triplet condition.

    ``witness`` is the first failing triplet.  ``certificate`` is the median
    of that triplet when it has one (a three-point failure inside a tree
    metric, for instance); it is None otherwise.
    """

    holds: bool
    witness: Optional[Triplet] = None
    certificate: Optional[int] = None

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a witness is present exactly when the condition fails")


@dataclass(frozen=True)
class Roundaboutness:
    rho: Fraction
    argmax_triplet: Triplet

    @property
    def decimal(self) -> str:
        return decimal_string(self.rho)


@dataclass(frozen=True)
class PathDeviance:
    value: Fraction
    argmax_triplet: Triplet

    @property
    def decimal(self) -> str:
        return decimal_string(self.value)


@dataclass(frozen=True)
class TripletTable:
    """Per-triplet integer data, rows in lexicographic ``(x, y, z)`` order.

    ``minsum`` is min over all points i of d(x,i)+d(y,i)+d(z,i), attained
    first at ``argmin``; ``perim`` and ``maxside`` describe the triangle.
    Values are in units of ``1/scale``.
    """

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    minsum: np.ndarray
    argmin: np.ndarray
    perim: np.ndarray
    maxside: np.ndarray
    scale: int

    def __len__(self):
        return len(self.x)

    def triplet(self, k: int) -> Triplet:
        return int(self.x[k]), int(self.y[k]), int(self.z[k])


def _table_rows(rows: list[int], D: np.ndarray) -> list[tuple]:
    n = D.shape[0]
    out = []
    for x in rows:
        Y = np.arange(x + 1, n)
        m = len(Y)
        if m < 2:
            continue
        Dy = D[Y]
        Dyy = Dy[:, Y]
        blk = max(1, _BLOCK // (m * n))
        parts = []
        for a0 in range(0, m - 1, blk):
            a1 = min(a0 + blk, m - 1)
            # S[a, b, i] = d(x,i) + d(y_a,i) + d(y_b,i)
            S = (D[x] + Dy[a0:a1])[:, None, :] + Dy[None, :, :]
            a, b = np.nonzero(np.arange(m)[None, :] > np.arange(a0, a1)[:, None])
            sel = S[a, b]
            A = a + a0
            sides = np.stack([D[x, Y[A]], Dyy[A, b], D[x, Y[b]]])
            parts.append((
                Y[A], Y[b],
                sel.min(axis=1), sel.argmin(axis=1),
                sides.sum(axis=0), sides.max(axis=0),
            ))
        ys, zs, mins, args, perims, maxes = (np.concatenate(c) for c in zip(*parts))
        out.append((np.full(len(ys), x), ys, zs, mins, args, perims, maxes))
    return out


_tables: "weakref.WeakKeyDictionary[FiniteMetricSpace, TripletTable]" = weakref.WeakKeyDictionary()


def triplet_table(M: FiniteMetricSpace, jobs: Optional[int] = None) -> TripletTable:
    """Scan every distinct triplet once (O(n^4)); cached per space."""
    cached = _tables.get(M)
    if cached is not None:
        return cached
    D = M.int_matrix
    rows = map_rows(_table_rows, M.n, (D,), jobs)
    if rows:
        cols = [np.concatenate(c) for c in zip(*rows)]
    else:
        empty = np.zeros(0, dtype=D.dtype)
        cols = [np.zeros(0, dtype=int)] * 3 + [empty, np.zeros(0, dtype=int), empty, empty]
    table = TripletTable(*cols, scale=M.scale)
    _tables[M] = table
    return table


def _first(mask: np.ndarray) -> Optional[int]:
    hits = np.flatnonzero(mask)
    return int(hits[0]) if len(hits) else None


def _exact_argmax(num: np.ndarray, den: np.ndarray) -> tuple[Fraction, int]:
    """Lexicographically first index maximising num/den, exactly.

    A float pass narrows the field; ties and near-ties are then settled with
    integer cross-multiplication.
    """
    if len(num) == 0:
        raise ValueError("empty scan")
    if not np.any(num):
        return Fraction(0), 0
    ratio = num.astype(float) / den.astype(float)
    top = ratio.max()
    cand = np.flatnonzero(ratio >= top - 1e-9 * abs(top))
    best = int(cand[0])
    bn, bd = int(num[best]), int(den[best])
    for c in cand[1:]:
        cn, cd = int(num[c]), int(den[c])
        if cn * bd > bn * cd:
            best, bn, bd = int(c), cn, cd
    return Fraction(bn, bd), best


def median(M: FiniteMetricSpace, x: int, y: int, z: int) -> Optional[int]:
    """The point p with d(x,p)+d(y,p)+d(z,p) equal to half the perimeter of
    (x, y, z), or None.  At most one point qualifies."""
    D = M.int_matrix
    half2 = D[x, y] + D[y, z] + D[z, x]
    hits = np.flatnonzero(2 * (D[x] + D[y] + D[z]) == half2)
    return int(hits[0]) if len(hits) else None


def fourth_point_condition(M: FiniteMetricSpace, jobs: Optional[int] = None) -> ConditionResult:
    """Every triplet has a median.  O(n^4)."""
    t = triplet_table(M, jobs)
    k = _first(2 * t.minsum != t.perim)
    if k is None:
        return ConditionResult(True)
    return ConditionResult(False, t.triplet(k))


def three_point_condition(M: FiniteMetricSpace, jobs: Optional[int] = None) -> ConditionResult:
    """In every triplet the longest side is half the perimeter.

    Only the sides are needed, so this avoids the O(n^4) table.
    """
    D = M.int_matrix
    n = M.n
    for x in range(n - 2):
        Y = np.arange(x + 1, n)
        dx = D[x, Y]
        Dyy = D[np.ix_(Y, Y)]
        a, b = np.triu_indices(len(Y), 1)
        s1, s2, s3 = dx[a], Dyy[a, b], dx[b]
        big = np.maximum(np.maximum(s1, s2), s3)
        k = _first(2 * big != s1 + s2 + s3)
        if k is not None:
            w = (x, int(Y[a[k]]), int(Y[b[k]]))
            return ConditionResult(False, w, median(M, *w))
    return ConditionResult(True)


def roundaboutness(M: FiniteMetricSpace, jobs: Optional[int] = None) -> Roundaboutness:
    """rho: the worst normalised excess of the best distance-sum over half
    the perimeter, maximised over triplets.  Zero exactly when the
    fourth-point condition holds."""
    if M.n < 2:
        raise ValueError("roundaboutness needs at least two points")
    if M.n == 2:
        return Roundaboutness(Fraction(0), (0, 0, 1))
    t = triplet_table(M, jobs)
    rho, k = _exact_argmax(2 * t.minsum - t.perim, 2 * t.perim)
    return Roundaboutness(rho, t.triplet(k))


def path_deviance(M: FiniteMetricSpace, jobs: Optional[int] = None) -> PathDeviance:
    """Worst (half perimeter - longest side) / perimeter over triplets.

    Zero exactly when the three-point condition holds.  Dividing by the
    perimeter keeps the value scale-free, like rho.
    """
    if M.n < 2:
        raise ValueError("path deviance needs at least two points")
    if M.n == 2:
        return PathDeviance(Fraction(0), (0, 0, 1))
    t = triplet_table(M, jobs)
    value, k = _exact_argmax(t.perim - 2 * t.maxside, 2 * t.perim)
    return PathDeviance(value, t.triplet(k))


def _hyper_rows(rows: list[int], D: np.ndarray) -> list:
    n = D.shape[0]
    out = []
    for x in rows:
        Y = np.arange(x + 1, n)
        m = len(Y)
        if m < 3:
            out.append(0)
            continue
        a = D[x, Y]
        Dyy = D[np.ix_(Y, Y)]
        best = 0
        blk = max(1, _BLOCK // (m * m))
        for y0 in range(0, m, blk):
            y1 = min(y0 + blk, m)
            # quadruple (x, y, z, w) with y, z, w ranging over Y
            s1 = a[y0:y1, None, None] + Dyy[None, :, :]
            s2 = a[None, :, None] + Dyy[y0:y1, None, :]
            s3 = a[None, None, :] + Dyy[y0:y1, :, None]
            hi = np.maximum(np.maximum(s1, s2), s3)
            lo = np.minimum(np.minimum(s1, s2), s3)
            gap = (2 * hi + lo - s1 - s2 - s3).max()
            best = max(best, int(gap))
        out.append(best)
    return out


def hyperbolicity(M: FiniteMetricSpace, jobs: Optional[int] = None) -> Fraction:
    """Gromov's four-point delta: half the gap between the two largest of
    the three pair-sums, maximised over quadruples."""
    if M.n < 4:
        return Fraction(0)
    gaps = map_rows(_hyper_rows, M.n, (M.int_matrix,), jobs)
    return Fraction(max(gaps), 2 * M.scale)
