"""Finite metric spaces with exact rational distances.

Every distance is held as a :class:`fractions.Fraction`.  Heavy scans work on
an integer copy of the matrix obtained by multiplying through by the least
common multiple of all denominators, which keeps equality tests exact while
letting numpy do the looping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from numbers import Rational
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

# int64 headroom: scans add up to six distances before comparing
_INT64_SAFE = 2**62 // 8


class MetricError(ValueError):
    """Raised when a matrix is not a metric; carries the first violation."""

    def __init__(self, violation: "MetricViolation"):
        super().__init__(violation.describe())
        self.violation = violation


def as_rational(value) -> Fraction:
    """Convert ``value`` to an exact Fraction.

    Strings are parsed exactly, so ``"1.25"`` gives ``5/4`` and ``"1/3"``
    gives ``1/3``.  NaN and infinities are rejected.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not distances")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite distance {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        token = value.strip()
        try:
            return Fraction(token)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot parse {value!r} as an exact rational") from None
    # Decimal and friends
    try:
        return Fraction(value)
    except (TypeError, ValueError, OverflowError):
        raise ValueError(f"cannot parse {value!r} as an exact rational") from None


def integer_matrix(dist: Sequence[Sequence[Fraction]]) -> tuple[np.ndarray, int]:
    """Return ``(D, scale)`` with ``D`` integral and ``dist == D / scale``.

    ``D`` is int64 when every entry is comfortably inside the int64 range and
    an object array of Python ints otherwise.
    """
    n = len(dist)
    scale = 1
    for row in dist:
        for v in row:
            scale = math.lcm(scale, v.denominator)
    flat = [v.numerator * (scale // v.denominator) for row in dist for v in row]
    biggest = max((abs(v) for v in flat), default=0)
    dtype = np.int64 if biggest < _INT64_SAFE else object
    D = np.array(flat, dtype=dtype).reshape(n, n)
    return D, scale


@dataclass(frozen=True)
class MetricViolation:
    """First failed metric axiom, with the exact values that were compared.

    ``lhs`` and ``rhs`` are the two sides of the comparison that should have
    held: ``lhs <= rhs`` for ``triangle`` (``d[i][k]`` against
    ``d[i][j] + d[j][k]``), ``lhs == rhs`` for ``asymmetry`` and
    ``nonzero-diagonal``, ``lhs > rhs`` for ``zero-off-diagonal`` and
    ``lhs >= rhs`` for ``negative``.
    """

    kind: str
    indices: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction

    def describe(self, labels: Optional[Sequence[str]] = None) -> str:
        names = [labels[i] if labels else str(i) for i in self.indices]
        return f"{self.kind} violation at ({', '.join(names)}): lhs={self.lhs} rhs={self.rhs}"


def _pairwise_violation(dist) -> Optional[MetricViolation]:
    n = len(dist)
    zero = Fraction(0)
    for i in range(n):
        for j in range(n):
            v = dist[i][j]
            if v < 0:
                return MetricViolation("negative", (i, j), v, zero)
            if i == j:
                if v != 0:
                    return MetricViolation("nonzero-diagonal", (i,), v, zero)
                continue
            if v == 0:
                return MetricViolation("zero-off-diagonal", (i, j), v, zero)
            if j > i and dist[j][i] != v:
                return MetricViolation("asymmetry", (i, j), v, dist[j][i])
    return None


def _triangle_violation(dist, D: np.ndarray) -> Optional[MetricViolation]:
    n = len(dist)
    for i in range(n):
        # bad[j, k]: d(i,k) > d(i,j) + d(j,k)
        bad = D[i][None, :] > D[i][:, None] + D
        if bad.any():
            j, k = np.unravel_index(int(np.argmax(bad)), bad.shape)
            j, k = int(j), int(k)
            return MetricViolation("triangle", (i, j, k), dist[i][k], dist[i][j] + dist[j][k])
    return None


def first_violation(dist: Sequence[Sequence[Fraction]]) -> Optional[MetricViolation]:
    """Return the lexicographically first metric-axiom violation, or None.

    Entry-wise axioms are scanned first in (i, j) order; the triangle
    inequality is only checked once those all hold.
    """
    found = _pairwise_violation(dist)
    if found is not None:
        return found
    D, _ = integer_matrix(dist)
    return _triangle_violation(dist, D)


def _coerce_matrix(raw) -> tuple[tuple[Fraction, ...], ...]:
    rows = [list(r) for r in raw]
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise ValueError(f"distance matrix is not square: row of length {len(r)} in {n}x{n}")
    return tuple(tuple(as_rational(v) for v in r) for r in rows)


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """Labelled points with an exact distance matrix.

    Construction checks every metric axiom and raises :class:`MetricError`
    on the first violation.
    """

    labels: tuple[str, ...]
    dist: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        object.__setattr__(self, "dist", _coerce_matrix(self.dist))
        if len(self.labels) != len(self.dist):
            raise ValueError(f"{len(self.labels)} labels for a {len(self.dist)}-point matrix")
        if len(self.labels) == 0:
            raise ValueError("a metric space needs at least one point")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels")
        bad = _pairwise_violation(self.dist)
        if bad is None:
            bad = _triangle_violation(self.dist, self.int_matrix)
        if bad is not None:
            raise MetricError(bad)

    @property
    def n(self) -> int:
        return len(self.labels)

    def d(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    @cached_property
    def _scaled(self) -> tuple[np.ndarray, int]:
        return integer_matrix(self.dist)

    @property
    def int_matrix(self) -> np.ndarray:
        """Integer matrix equal to ``dist * scale``."""
        return self._scaled[0]

    @property
    def scale(self) -> int:
        return self._scaled[1]

    def pairs(self) -> Iterable[tuple[int, int]]:
        return combinations(range(self.n), 2)

    def scaled_by(self, factor) -> "FiniteMetricSpace":
        factor = as_rational(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return FiniteMetricSpace(self.labels, [[v * factor for v in row] for row in self.dist])

    def permuted(self, perm: Sequence[int]) -> "FiniteMetricSpace":
        """Space whose point ``k`` is point ``perm[k]`` of this one."""
        return FiniteMetricSpace(
            [self.labels[p] for p in perm],
            [[self.dist[p][q] for q in perm] for p in perm],
        )

    def __eq__(self, other):
        if not isinstance(other, FiniteMetricSpace):
            return NotImplemented
        return self.labels == other.labels and self.dist == other.dist

    def __hash__(self):
        return hash((self.labels, self.dist))


def validate_metric(raw, labels: Optional[Sequence[str]] = None) -> FiniteMetricSpace:
    """Build a :class:`FiniteMetricSpace` from a square matrix.

    Entries may be Fractions, ints or exact decimal strings.  Raises
    ``ValueError`` for malformed input and :class:`MetricError` (a
    ``ValueError`` subclass) for the first axiom violation.
    """
    dist = _coerce_matrix(raw)
    if labels is None:
        labels = [str(i) for i in range(len(dist))]
    return FiniteMetricSpace(tuple(labels), dist)


class TieBreaking(NamedTuple):
    holds: bool
    colliding_pairs: list[tuple[tuple[int, int], tuple[int, int]]]


def check_tie_breaking(M: FiniteMetricSpace, limit: Optional[int] = None) -> TieBreaking:
    """Check that all off-diagonal distances are pairwise distinct.

    ``colliding_pairs`` lists every pair of point-pairs sharing a distance,
    sorted lexicographically.  A uniform space has O(n^4) of them, so
    ``limit`` may cap the list; ``holds`` is exact regardless.
    """
    groups: dict[Fraction, list[tuple[int, int]]] = {}
    for i, j in M.pairs():
        groups.setdefault(M.dist[i][j], []).append((i, j))
    tied = [g for g in groups.values() if len(g) > 1]
    if not tied:
        return TieBreaking(True, [])
    collisions = []
    for g in tied:
        collisions.extend(combinations(g, 2))
    collisions.sort()
    if limit is not None:
        collisions = collisions[:limit]
    return TieBreaking(False, collisions)


def metric_interval(M: FiniteMetricSpace, x: int, y: int) -> tuple[int, ...]:
    """Closed metric interval: every ``i`` with d(x,y) = d(x,i) + d(i,y)."""
    if x == y:
        raise ValueError("the metric interval is only defined for distinct points")
    D = M.int_matrix
    on = D[x] + D[y] == D[x, y]
    return tuple(int(i) for i in np.flatnonzero(on))


def decimal_string(q: Fraction, digits: int = 12) -> str:
    """Render ``q`` with ``digits`` significant digits."""
    from decimal import Decimal, localcontext

    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(q.numerator) / Decimal(q.denominator))


def rational_string(q: Fraction) -> str:
    """Exact ``"p/q"`` form; the denominator is always written."""
    return f"{q.numerator}/{q.denominator}"
