"""Time the analysis phases on random tree metrics of growing size.

    python scripts/scan_timings.py --sizes 25 50 100 150 --jobs 1
"""

import argparse
from dataclasses import dataclass

from treelike.oracle import GeneratorSpec, generate
from treelike.report import analyze

PHASES = ("tie_breaking", "basic_graph", "fourth_point", "three_point",
          "roundaboutness", "hyperbolicity", "recognition")


@dataclass(frozen=True)
class TimingConfig:
    sizes: tuple = (25, 50, 100, 150)
    kind: str = "tree"
    seed: int = 0
    jobs: int = 1


def run(cfg: TimingConfig):
    for n in cfg.sizes:
        M, _ = generate(GeneratorSpec(cfg.kind, n, seed=cfg.seed))
        doc = analyze(M, jobs=cfg.jobs, timings=True)
        yield n, doc.timings_ms


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=list(TimingConfig.sizes))
    p.add_argument("--kind", default=TimingConfig.kind)
    p.add_argument("--seed", type=int, default=TimingConfig.seed)
    p.add_argument("--jobs", type=int, default=TimingConfig.jobs)
    a = p.parse_args()
    cfg = TimingConfig(tuple(a.sizes), a.kind, a.seed, a.jobs)
    print("n".rjust(5) + "".join(ph[:12].rjust(14) for ph in PHASES) + "total".rjust(10))
    for n, t in run(cfg):
        cells = "".join(f"{t.get(ph, 0):14.1f}" for ph in PHASES)
        print(f"{n:5d}{cells}{sum(t.values()):10.1f}")
    print("(milliseconds)")


if __name__ == "__main__":
    main()
