"""Reading and writing distance matrices and graphs.

Three matrix formats are supported:

``csv``
    Square table; the first row holds the column labels (its first cell is
    ignored) and every later row starts with its own label.
``lower``
    PHYLIP-style lower triangle: each line is a label followed by its
    distances to all earlier points, whitespace separated.
``json``
    ``{"labels": [...], "matrix": [[...], ...]}`` with entries written as
    decimal or ``p/q`` strings.

Values are parsed exactly.  Values whose denominator divides a power of ten
are written as plain decimals and everything else as ``p/q``, so every
format round-trips losslessly.
"""

from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction
from typing import Sequence, TextIO

from .geodesic import WeightedGraph
from .metric_core import FiniteMetricSpace, rational_string

FORMATS = ("csv", "lower", "json")

_NUMBER = re.compile(r"^\+?(\d+(\.\d*)?|\.\d+)([eE][-+]?\d+)?$|^\+?\d+\s*/\s*\d+$")


class InputError(ValueError):
    pass


def parse_value(token) -> Fraction:
    if isinstance(token, bool):
        raise InputError(f"not a distance: {token!r}")
    if isinstance(token, int):
        if token < 0:
            raise InputError(f"negative distance {token}")
        return Fraction(token)
    if not isinstance(token, str):
        raise InputError(f"not a distance: {token!r}")
    text = token.strip()
    if not _NUMBER.match(text):
        raise InputError(f"cannot parse {token!r} as a non-negative finite number")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise InputError(f"zero denominator in {token!r}") from None


def format_value(q: Fraction) -> str:
    """Exact text for ``q``: a plain decimal when one exists, else ``p/q``."""
    den = q.denominator
    places = 0
    while den % 10 == 0:
        den //= 10
        places += 1
    while den % 2 == 0 or den % 5 == 0:
        den //= 2 if den % 2 == 0 else 5
        places += 1
    if den != 1:
        return rational_string(q)
    if places == 0:
        return str(q.numerator)
    digits = str(abs(q.numerator) * 10**places // q.denominator).rjust(places + 1, "0")
    sign = "-" if q < 0 else ""
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _check_labels(labels: Sequence[str]) -> list[str]:
    labels = [s.strip() for s in labels]
    if any(not s for s in labels):
        raise InputError("empty label")
    seen = set()
    for s in labels:
        if s in seen:
            raise InputError(f"duplicate label {s!r}")
        seen.add(s)
    return labels


def _parse_csv(text: str):
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if not rows:
        raise InputError("empty input")
    header = _check_labels(rows[0][1:])
    n = len(header)
    body = rows[1:]
    if len(body) != n:
        raise InputError(f"expected {n} data rows after the header, got {len(body)}")
    matrix = []
    for k, row in enumerate(body):
        if len(row) != n + 1:
            raise InputError(f"row {k + 2} has {len(row) - 1} values, expected {n}")
        if row[0].strip() != header[k]:
            raise InputError(f"row {k + 2} is labelled {row[0].strip()!r}, expected {header[k]!r}")
        matrix.append([parse_value(c) for c in row[1:]])
    return matrix, header


def _parse_lower(text: str):
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty input")
    labels = _check_labels([ln[0] for ln in lines])
    n = len(labels)
    matrix = [[Fraction(0)] * n for _ in range(n)]
    for i, ln in enumerate(lines):
        if len(ln) - 1 != i:
            raise InputError(f"line {i + 1} ({labels[i]}) has {len(ln) - 1} values, expected {i}")
        for j, tok in enumerate(ln[1:]):
            matrix[i][j] = matrix[j][i] = parse_value(tok)
    return matrix, labels


def _parse_json(text: str):
    try:
        doc = json.loads(text, parse_float=str, parse_constant=lambda c: c)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "labels" not in doc or "matrix" not in doc:
        raise InputError('JSON input needs "labels" and "matrix"')
    labels = _check_labels([str(s) for s in doc["labels"]])
    rows = doc["matrix"]
    n = len(labels)
    if not isinstance(rows, list) or len(rows) != n or any(
        not isinstance(r, list) or len(r) != n for r in rows
    ):
        raise InputError(f"matrix must be {n}x{n} to match the labels")
    return [[parse_value(v) for v in r] for r in rows], labels


def parse_input(source: str | TextIO, fmt: str = "csv") -> tuple[list[list[Fraction]], list[str]]:
    """Read ``(matrix, labels)`` from a path, ``"-"`` for stdin, or a stream.

    The matrix is not checked against the metric axioms here.
    """
    if fmt not in FORMATS:
        raise InputError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if isinstance(source, str):
        if source == "-":
            import sys

            text = sys.stdin.read()
        else:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
    else:
        text = source.read()
    return {"csv": _parse_csv, "lower": _parse_lower, "json": _parse_json}[fmt](text)


def parse_text(text: str, fmt: str = "csv"):
    return parse_input(io.StringIO(text), fmt)


def serialize(M: FiniteMetricSpace, fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([".", *M.labels])
        for label, row in zip(M.labels, M.dist):
            w.writerow([label, *(format_value(v) for v in row)])
        return buf.getvalue()
    if fmt == "lower":
        if any(not s or any(c.isspace() for c in s) for s in M.labels):
            raise ValueError("lower format needs labels without whitespace")
        lines = [" ".join([label, *(format_value(v) for v in M.dist[i][:i])])
                 for i, label in enumerate(M.labels)]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        doc = {"labels": list(M.labels),
               "matrix": [[format_value(v) for v in row] for row in M.dist]}
        return json.dumps(doc, indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


_DOT_ID = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*|-?(\.\d+|\d+(\.\d*)?))$")


def _dot_id(s: str) -> str:
    if _DOT_ID.match(s):
        return s
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(G: WeightedGraph) -> str:
    """Undirected DOT on one line, edges in lexicographic order."""
    parts = [f'{_dot_id(G.labels[i])} -- {_dot_id(G.labels[j])} [label="{w}"];'
             for i, j, w in G.edges]
    body = " ".join(parts)
    return "graph { " + body + (" }" if body else "}")


def graph_to_json(G: WeightedGraph) -> dict:
    return {
        "labels": list(G.labels),
        "edges": [{"u": G.labels[i], "v": G.labels[j], "weight": rational_string(w)}
                  for i, j, w in G.edges],
        "total_weight": rational_string(G.total_weight),
    }
