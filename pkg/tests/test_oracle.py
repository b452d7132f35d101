import random
from collections import Counter
from fractions import Fraction

import pytest

from treelike import FiniteMetricSpace, WeightedGraph, check_tie_breaking, recognize
from treelike.metric_core import first_violation
from treelike.oracle import (
    GenerationError,
    GeneratorSpec,
    _decode_all_pruefer,
    apsp,
    brute_force_edge_class,
    brute_force_tsp,
    enumerate_min_spanning_trees,
    generate,
    random_pruefer_tree,
    tree_metric,
)

from .reference import is_acyclic


def test_apsp_examples():
    G = WeightedGraph("abc", ((0, 1, 1), (1, 2, 2)))
    assert apsp(G)[0][2] == 3
    C = WeightedGraph("1234", ((0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)))
    d = apsp(C)
    assert d[0][2] == d[1][3] == 2
    with pytest.raises(ValueError):
        apsp(WeightedGraph("abc", ((0, 1, 1),)))


def test_apsp_random_tree():
    M, tree = generate(GeneratorSpec("tree", 20, seed=13))
    assert apsp(tree) == [list(r) for r in M.dist]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_pruefer_decoding_yields_every_tree_once(n):
    trees = _decode_all_pruefer(n)
    assert len(trees) == n ** max(n - 2, 0)
    seen = set()
    for edges in trees:
        pairs = [tuple(sorted(map(int, e))) for e in edges]
        assert is_acyclic(n, pairs)
        seen.add(frozenset(pairs))
    assert len(seen) == len(trees)


def test_enumerate_min_trees_examples(path_metric, cycle4):
    trees = enumerate_min_spanning_trees(path_metric)
    assert [t.edges for t in trees] == [((0, 1, 1), (1, 2, 2))]
    # the 4 unit edges tie: any 3 of them form a minimum tree
    assert len(enumerate_min_spanning_trees(cycle4)) == 4
    with pytest.raises(ValueError):
        enumerate_min_spanning_trees(generate(GeneratorSpec("l1", 9, seed=0))[0])


def test_enumerate_min_trees_unique_under_tie_breaking():
    for seed in range(10):
        M, _ = generate(GeneratorSpec("l1", 6, seed=seed))
        if check_tie_breaking(M).holds:
            assert len(enumerate_min_spanning_trees(M)) == 1


def test_tsp_examples(path_metric, k3):
    assert brute_force_tsp(path_metric) == 6
    assert brute_force_tsp(k3) == 3
    M, tree = generate(GeneratorSpec("tree", 8, seed=21))
    assert brute_force_tsp(M) == 2 * tree.total_weight
    with pytest.raises(ValueError):
        brute_force_tsp(FiniteMetricSpace("ab", [[0, 1], [1, 0]]))


def test_edge_class_examples(path_metric, cycle4):
    assert not brute_force_edge_class(path_metric, 0, 2)
    assert brute_force_edge_class(path_metric, 0, 1)
    assert not brute_force_edge_class(cycle4, 0, 2)
    with pytest.raises(ValueError):
        brute_force_edge_class(generate(GeneratorSpec("l1", 7, seed=0))[0], 0, 1)


def test_generate_is_deterministic():
    a, _ = generate(GeneratorSpec("tree", 5, seed=42))
    b, _ = generate(GeneratorSpec("tree", 5, seed=42))
    assert a == b
    c, _ = generate(GeneratorSpec("tree", 5, seed=43))
    assert a != c


@pytest.mark.parametrize("kind", ["tree", "euclidean", "l1", "perturbed-tree"])
def test_generated_spaces_are_metrics(kind):
    for seed in range(5):
        M, tree = generate(GeneratorSpec(kind, 6, seed=seed, dim=2))
        assert first_violation(M.dist) is None
        assert (tree is not None) == (kind == "tree")


def test_tree_weights_are_distinct():
    _, tree = generate(GeneratorSpec("tree", 30, seed=1, resolution=10))
    weights = [w for _, _, w in tree.edges]
    assert len(set(weights)) == len(weights)


def test_tree_round_trip_n50():
    M, tree = generate(GeneratorSpec("tree", 50, seed=7))
    assert recognize(M).realizing_graph == tree


def test_perturbed_tree_is_not_a_tree():
    M, _ = generate(GeneratorSpec("perturbed-tree", 7, seed=4))
    assert not recognize(M).is_spanning_tree_metric


def test_perturbed_tree_retry_budget():
    spec = GeneratorSpec("perturbed-tree", 8, seed=0, perturbation=Fraction(1),
                         noise_floor=Fraction(-50), max_retries=2)
    with pytest.raises(GenerationError):
        generate(spec)


def test_generator_spec_checks():
    with pytest.raises(ValueError):
        GeneratorSpec("ring", 4, seed=0)
    with pytest.raises(ValueError):
        GeneratorSpec("tree", 0, seed=0)
    with pytest.raises(ValueError):
        GeneratorSpec("tree", 4, seed=0, weight_range=(0, 1))


def test_pruefer_sampling_is_roughly_uniform():
    # 16 labelled trees on 4 vertices
    rng = random.Random(0)
    counts = Counter(frozenset(random_pruefer_tree(4, rng)) for _ in range(3200))
    assert len(counts) == 16
    assert min(counts.values()) > 140 and max(counts.values()) < 260


def test_tree_metric_sums_paths():
    d = tree_metric(3, [(0, 1, Fraction(1)), (1, 2, Fraction(2))])
    assert d[0][2] == 3
