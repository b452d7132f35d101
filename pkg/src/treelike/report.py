"""The ``analyze`` report: every verdict and measure for one metric space."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Optional

from . import oracle
from .conditions import (
    fourth_point_condition,
    hyperbolicity,
    path_deviance,
    roundaboutness,
    three_point_condition,
)
from .geodesic import basic_geodesic_graph, classify_edge, complete_graph, path_order
from .metric_core import FiniteMetricSpace, MetricViolation, check_tie_breaking, decimal_string, rational_string
from .recognition import mst, recognize

# collisions listed in a report; the count is always exact
COLLISION_LIMIT = 20


def _measure(q: Fraction) -> dict:
    return {"exact": rational_string(q), "decimal": decimal_string(q)}


@dataclass
class ReportDocument:
    labels: list[str]
    n: int
    metric_valid: bool
    violation: Optional[dict] = None
    tie_breaking: Optional[bool] = None
    fourth_point: Optional[bool] = None
    three_point: Optional[bool] = None
    rho: Optional[dict] = None
    path_deviance: Optional[dict] = None
    path_deviance_normalized: bool = True
    hyperbolicity: Optional[dict] = None
    is_spanning_tree_metric: Optional[bool] = None
    is_spanning_path_metric: Optional[bool] = None
    equivalence_consistent: Optional[bool] = None
    basic_graph_edges: Optional[int] = None
    realizing_edges: Optional[list] = None
    spanning_path: Optional[list[str]] = None
    witnesses: dict = field(default_factory=dict)
    timings_ms: Optional[dict] = None
    verification: Optional[dict] = None

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc = {"input": {"labels": doc.pop("labels"), "n": doc.pop("n")}, **doc}
        if self.timings_ms is None:
            doc.pop("timings_ms")
        if self.verification is None:
            doc.pop("verification")
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> "ReportDocument":
        doc = dict(doc)
        inp = doc.pop("input")
        return cls(labels=list(inp["labels"]), n=inp["n"], **doc)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))

    @property
    def rho_value(self) -> Optional[Fraction]:
        return Fraction(self.rho["exact"]) if self.rho else None


def invalid_report(labels: list[str], violation: MetricViolation) -> ReportDocument:
    names = [labels[i] for i in violation.indices]
    return ReportDocument(
        labels=list(labels),
        n=len(labels),
        metric_valid=False,
        violation={
            "kind": violation.kind,
            "indices": names,
            "lhs": rational_string(violation.lhs),
            "rhs": rational_string(violation.rhs),
        },
    )


class _Clock:
    def __init__(self):
        self.phases: dict[str, float] = {}

    @contextmanager
    def phase(self, name: str):
        start = time.perf_counter()
        yield
        self.phases[name] = round((time.perf_counter() - start) * 1000, 3)


def analyze(
    M: FiniteMetricSpace,
    jobs: Optional[int] = None,
    verify: bool = False,
    timings: bool = False,
) -> ReportDocument:
    """Run every check on ``M`` and collect the results."""
    clock = _Clock()
    names = M.labels

    def tri(t):
        return None if t is None else [names[i] for i in t]

    with clock.phase("tie_breaking"):
        tie = check_tie_breaking(M, limit=COLLISION_LIMIT)
    with clock.phase("basic_graph"):
        G = basic_geodesic_graph(M)
    with clock.phase("fourth_point"):
        fourth = fourth_point_condition(M, jobs)
    with clock.phase("three_point"):
        three = three_point_condition(M, jobs)
    rho = dev = None
    if M.n >= 2:
        with clock.phase("roundaboutness"):
            rho = roundaboutness(M, jobs)
        with clock.phase("path_deviance"):
            dev = path_deviance(M, jobs)
    with clock.phase("hyperbolicity"):
        delta = hyperbolicity(M, jobs)
    with clock.phase("recognition"):
        verdict = recognize(M, jobs)

    doc = ReportDocument(
        labels=list(names),
        n=M.n,
        metric_valid=True,
        tie_breaking=tie.holds,
        fourth_point=fourth.holds,
        three_point=three.holds,
        rho=None if rho is None else {
            **_measure(rho.rho),
            "argmax_triplet": tri(rho.argmax_triplet),
            "interpretable": tie.holds,
        },
        path_deviance=None if dev is None else {
            **_measure(dev.value),
            "argmax_triplet": tri(dev.argmax_triplet),
        },
        hyperbolicity=_measure(delta),
        is_spanning_tree_metric=verdict.is_spanning_tree_metric,
        is_spanning_path_metric=verdict.is_spanning_path_metric,
        equivalence_consistent=verdict.cross_check.equivalence_consistent,
        basic_graph_edges=len(G.edges),
        realizing_edges=None if verdict.realizing_graph is None else [
            [names[i], names[j], rational_string(w)] for i, j, w in verdict.realizing_graph.edges
        ],
        spanning_path=[names[i] for i in path_order(G)] if verdict.is_spanning_path_metric else None,
        witnesses={
            "fourth_point": tri(fourth.witness),
            "three_point": tri(three.witness),
            "three_point_median": None if three.certificate is None else names[three.certificate],
            "tie_breaking": [[tri(a), tri(b)] for a, b in tie.colliding_pairs],
        },
    )
    if verify:
        with clock.phase("verify"):
            doc.verification = verify_with_oracles(M, G, verdict.is_spanning_tree_metric)
    if timings:
        doc.timings_ms = clock.phases
    return doc


def verify_with_oracles(M: FiniteMetricSpace, G, is_tree: bool) -> dict:
    """Re-derive what the oracles can afford at this size; skip the rest."""
    checks: dict[str, Any] = {}

    if M.n <= oracle.EDGE_CAP:
        bad = [
            [M.labels[i], M.labels[j]]
            for i, j in M.pairs()
            if classify_edge(M, i, j).basic != oracle.brute_force_edge_class(M, i, j)
        ]
        checks["edge_classes"] = {"status": "fail" if bad else "pass", "mismatches": bad}
    else:
        checks["edge_classes"] = {"status": "skipped", "reason": f"n > {oracle.EDGE_CAP}"}

    tree, _ = mst(complete_graph(M))
    if M.n <= oracle.MST_CAP:
        trees = oracle.enumerate_min_spanning_trees(M)
        ok = trees[0].total_weight == tree.total_weight
        if is_tree:
            ok = ok and len(trees) == 1 and trees[0].edges == G.edges
        checks["min_spanning_trees"] = {"status": "pass" if ok else "fail", "count": len(trees)}
    else:
        checks["min_spanning_trees"] = {"status": "skipped", "reason": f"n > {oracle.MST_CAP}"}

    if not is_tree:
        checks["tsp"] = {"status": "skipped", "reason": "not a spanning tree metric"}
    elif 3 <= M.n <= oracle.TSP_CAP:
        tour = oracle.brute_force_tsp(M)
        ok = tour == 2 * tree.total_weight
        checks["tsp"] = {"status": "pass" if ok else "fail", "tour": rational_string(tour)}
    else:
        checks["tsp"] = {"status": "skipped", "reason": f"n outside [3, {oracle.TSP_CAP}]"}

    d = oracle.apsp(G)
    ok = all(d[i][j] == M.dist[i][j] for i, j in M.pairs())
    checks["apsp"] = {"status": "pass" if ok else "fail"}

    checks["ok"] = all(c["status"] != "fail" for c in checks.values() if isinstance(c, dict))
    return checks
