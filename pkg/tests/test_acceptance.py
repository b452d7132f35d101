"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line; the lines are printed together in the
terminal summary at the end of the module.
"""

import time
from fractions import Fraction

import pytest

from treelike import (
    basic_geodesic_graph,
    check_tie_breaking,
    classify_edge,
    complete_graph,
    fourth_point_condition,
    hyperbolicity,
    mst,
    path_deviance,
    recognize,
    recognize_path,
    roundaboutness,
    three_point_condition,
    verify_realisation,
)
from treelike.geodesic import path_order
from treelike.oracle import (
    GeneratorSpec,
    brute_force_edge_class,
    brute_force_tsp,
    enumerate_min_spanning_trees,
    generate,
)
from treelike.recognition import farthest_pair
from treelike.report import analyze

RESULTS: dict[int, str] = {}


@pytest.fixture(scope="module", autouse=True)
def summary(request):
    yield
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    lines = [RESULTS[k] for k in sorted(RESULTS)]
    if reporter is not None:
        reporter.write_sep("=", "acceptance criteria")
        for line in lines:
            reporter.write_line(line)
    else:
        print("\n".join(lines))


def record(k, ok, detail):
    RESULTS[k] = f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(RESULTS[k])
    return ok


def _mixed_kind(seed):
    """Cycle tree, l1 (dim 1..3) and perturbed-tree generators."""
    kind = ("tree", "l1", "perturbed-tree")[seed % 3]
    dim = 1 + (seed // 3) % 3
    n = 4 + (seed // 9) % 5
    return GeneratorSpec(kind, n, seed=seed, dim=dim)


@pytest.fixture(scope="module")
def ensemble():
    """At least 1000 tie-breaking metrics with 4 <= n <= 8, plus elapsed time."""
    start = time.perf_counter()
    rows = []
    seed = 0
    while len(rows) < 1000:
        spec = _mixed_kind(seed)
        seed += 1
        M, _ = generate(spec)
        if not check_tie_breaking(M, limit=1).holds:
            continue
        G = basic_geodesic_graph(M)
        rows.append((spec, M, G, fourth_point_condition(M).holds))
    return rows, time.perf_counter() - start


def test_1_fourth_point_iff_spanning_tree(ensemble):
    rows, elapsed = ensemble
    bad = [spec for spec, M, G, four in rows if four != (len(G.edges) == M.n - 1)]
    trees = sum(len(G.edges) == M.n - 1 for _, M, G, _ in rows)
    kinds = {k: sum(spec.kind == k for spec, *_ in rows) for k in ("tree", "l1", "perturbed-tree")}
    ok = record(1, not bad and len(rows) >= 1000 and elapsed < 60,
                f"{len(rows)} tie-breaking metrics {kinds}, {trees} spanning trees, "
                f"{len(bad)} exceptions, {elapsed:.1f}s (< 60s)")
    assert ok, bad[:5]


def test_2_basic_graph_kruskal_enumeration_agree(ensemble):
    rows, _ = ensemble
    checked, bad = 0, []
    for spec, M, G, _ in rows:
        if not recognize(M).is_spanning_tree_metric:
            continue
        checked += 1
        kruskal, _ = mst(complete_graph(M))
        enumerated = enumerate_min_spanning_trees(M)
        labelled = {(M.labels[i], M.labels[j], w) for i, j, w in G.edges}
        same = (
            len(enumerated) == 1
            and len(G.edges) == M.n - 1
            and {(M.labels[i], M.labels[j], w) for i, j, w in kruskal.edges} == labelled
            and {(M.labels[i], M.labels[j], w) for i, j, w in enumerated[0].edges} == labelled
        )
        if not same:
            bad.append(spec)
    ok = record(2, checked > 0 and not bad,
                f"{checked} spanning tree metrics, G_M = Kruskal = unique enumerated tree, "
                f"{len(bad)} exceptions")
    assert ok, bad[:5]


def test_3_tree_round_trip():
    start = time.perf_counter()
    bad = []
    for seed in range(100):
        M, tree = generate(GeneratorSpec("tree", 50, seed=seed))
        rho = roundaboutness(M).rho
        if recognize(M).realizing_graph != tree or not (isinstance(rho, Fraction) and rho == 0):
            bad.append(seed)
    elapsed = time.perf_counter() - start
    ok = record(3, not bad and elapsed < 30,
                f"100 trees with n=50, {len(bad)} mismatches, rho exactly 0, {elapsed:.1f}s (< 30s)")
    assert ok, bad


def test_4_counterexample_fixtures(cycle4, k3):
    v = recognize(cycle4)
    cycle_ok = (
        fourth_point_condition(cycle4).holds
        and three_point_condition(cycle4).holds
        and not check_tie_breaking(cycle4).holds
        and not v.is_spanning_tree_metric
        and basic_geodesic_graph(cycle4).edge_set() == {(0, 1), (1, 2), (2, 3), (0, 3)}
        and hyperbolicity(cycle4) == 1
    )
    k3_ok = (
        not fourth_point_condition(k3).holds
        and roundaboutness(k3).rho == Fraction(1, 6)
        and hyperbolicity(k3) == 0
    )
    ok = record(4, cycle_ok and k3_ok,
                f"unit 4-cycle {'as expected' if cycle_ok else 'MISMATCH'}, "
                f"uniform K3 {'as expected' if k3_ok else 'MISMATCH'}")
    assert ok


def test_5_tour_is_twice_the_tree():
    bad = []
    for seed in range(50):
        M, tree = generate(GeneratorSpec("tree", 3 + seed % 7, seed=1000 + seed))
        assert recognize(M).is_spanning_tree_metric
        weight = mst(complete_graph(M))[0].total_weight
        if brute_force_tsp(M) != 2 * weight:
            bad.append(seed)
    ok = record(5, not bad, f"50 spanning tree metrics with 3 <= n <= 9, {len(bad)} exceptions")
    assert ok, bad


def test_6_single_witness_matches_permutation_oracle():
    kinds = ("tree", "euclidean", "l1", "perturbed-tree")
    edges, bad = 0, []
    for seed in range(200):
        M, _ = generate(GeneratorSpec(kinds[seed % 4], 3 + seed % 4, seed=seed, dim=1 + seed % 2))
        for x, y in M.pairs():
            edges += 1
            if classify_edge(M, x, y).basic != brute_force_edge_class(M, x, y):
                bad.append((seed, x, y))
    ok = record(6, not bad, f"200 metrics with n <= 6, {edges} edges, {len(bad)} disagreements")
    assert ok, bad[:5]


def test_7_path_recognition():
    checked, seed, bad = 0, 0, []
    while checked < 100:
        M, _ = generate(GeneratorSpec("l1", 30, seed=seed, dim=1))
        seed += 1
        if not check_tie_breaking(M, limit=1).holds:
            continue
        checked += 1
        assert three_point_condition(M).holds
        P = recognize_path(M)
        if P is None or not P.is_path() or verify_realisation(P, M) != (True, None):
            bad.append(seed - 1)
            continue
        s, _ = farthest_pair(M)
        order = path_order(P)
        if order[0] != s:
            order.reverse()
        dists = [M.d(s, i) for i in order]
        if order[0] != s or dists != sorted(dists):
            bad.append(seed - 1)
    ok = record(7, not bad, f"100 tie-breaking path metrics with n=30, {len(bad)} exceptions")
    assert ok, bad


def _measures(M):
    r, p = roundaboutness(M), path_deviance(M)
    four, three = fourth_point_condition(M), three_point_condition(M)
    v = recognize(M)
    return {
        "rho": (r.rho, r.argmax_triplet),
        "path_deviance": (p.value, p.argmax_triplet),
        "hyperbolicity": hyperbolicity(M),
        "verdicts": (four.holds, three.holds, check_tie_breaking(M).holds,
                     v.is_spanning_tree_metric, v.is_spanning_path_metric),
        "witnesses": (four.witness, three.witness, three.certificate),
    }


@pytest.mark.xfail(strict=True, reason="hyperbolicity is measured in distance units and scales "
                                       "with the matrix; it is unchanged only where it is 0")
def test_8_scale_invariance(path_metric, cycle4, k3, star3, star4):
    fixtures = {"path": path_metric, "cycle4": cycle4, "k3": k3, "star3": star3, "star4": star4}
    fixtures["tree7"] = generate(GeneratorSpec("tree", 7, seed=8))[0]
    fixtures["l1_6"] = generate(GeneratorSpec("l1", 6, seed=8))[0]
    fixtures["euclid5"] = generate(GeneratorSpec("euclidean", 5, seed=8))[0]
    c = Fraction(7, 3)
    changed = []
    for name, M in fixtures.items():
        before, after = _measures(M), _measures(M.scaled_by(c))
        changed += [f"{name}.{key}" for key in before if before[key] != after[key]]
    scaled_only = all(f.endswith(".hyperbolicity") for f in changed)
    detail = (f"{len(fixtures)} fixtures x 7/3: rho, path deviance, verdicts and witnesses "
              f"{'unchanged' if scaled_only else 'CHANGED'}; hyperbolicity changed on "
              f"{[f.split('.')[0] for f in changed if f.endswith('.hyperbolicity')]} "
              f"(e.g. unit 4-cycle 1 -> {hyperbolicity(cycle4.scaled_by(c))})")
    ok = record(8, not changed, detail)
    assert scaled_only
    assert ok


def test_9_complexity_smoke():
    seed = 0
    while True:
        M, _ = generate(GeneratorSpec("tree", 150, seed=seed))
        if check_tie_breaking(M, limit=1).holds:
            break
        seed += 1
    doc = analyze(M, jobs=1, timings=True)
    fourth_ms = doc.timings_ms["fourth_point"]
    # a tree stops the three-point scan at its first witness; a path metric
    # makes it visit every triplet
    P, _ = generate(GeneratorSpec("l1", 150, seed=0, dim=1))
    path_doc = analyze(P, jobs=1, timings=True)
    three_ms = max(doc.timings_ms["three_point"], path_doc.timings_ms["three_point"])
    ok = record(9, doc.is_spanning_tree_metric and path_doc.three_point
                and fourth_ms < 120_000 and three_ms < 5_000,
                f"n=150 tree (seed {seed}): fourth-point {fourth_ms / 1000:.2f}s (< 120s), "
                f"total {sum(doc.timings_ms.values()) / 1000:.2f}s; n=150 path metric: full "
                f"three-point scan {three_ms / 1000:.2f}s (< 5s)")
    assert ok
