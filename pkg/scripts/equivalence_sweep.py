"""Sweep seeded metrics and tabulate fourth-point verdicts against the shape
of the basic geodesic graph, split by tie-breaking.

    python scripts/equivalence_sweep.py --count 2000 --max-n 8
"""

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from treelike import basic_geodesic_graph, check_tie_breaking, fourth_point_condition
from treelike.oracle import KINDS, GeneratorSpec, generate


@dataclass(frozen=True)
class SweepConfig:
    count: int = 1000
    min_n: int = 4
    max_n: int = 8
    seed: int = 0
    kinds: tuple = KINDS


def sweep(cfg: SweepConfig) -> Counter:
    table = Counter()
    for k in range(cfg.count):
        seed = cfg.seed + k
        kind = cfg.kinds[k % len(cfg.kinds)]
        n = cfg.min_n + (k // len(cfg.kinds)) % (cfg.max_n - cfg.min_n + 1)
        M, _ = generate(GeneratorSpec(kind, n, seed=seed, dim=1 + k % 3))
        tie = check_tie_breaking(M, limit=1).holds
        tree = len(basic_geodesic_graph(M).edges) == n - 1
        table[(kind, tie, fourth_point_condition(M).holds, tree)] += 1
    return table


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=SweepConfig.count)
    p.add_argument("--min-n", type=int, default=SweepConfig.min_n)
    p.add_argument("--max-n", type=int, default=SweepConfig.max_n)
    p.add_argument("--seed", type=int, default=SweepConfig.seed)
    a = p.parse_args()
    cfg = SweepConfig(a.count, a.min_n, a.max_n, a.seed)
    start = time.perf_counter()
    table = sweep(cfg)
    print(f"{'kind':<15}{'tie-break':>10}{'4pt':>6}{'tree':>6}{'count':>8}")
    for (kind, tie, four, tree), c in sorted(table.items()):
        flag = "  <-- exception" if tie and four != tree else ""
        print(f"{kind:<15}{tie!s:>10}{four!s:>6}{tree!s:>6}{c:>8}{flag}")
    bad = sum(c for (_, tie, four, tree), c in table.items() if tie and four != tree)
    print(f"\n{cfg.count} metrics in {time.perf_counter() - start:.1f}s, "
          f"{bad} exceptions among tie-breaking instances")


if __name__ == "__main__":
    main()
