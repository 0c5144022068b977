"""Gap between polygonal length and distance along graph geodesics, per grid size."""

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from riemann_sphere.io import SweepTable
from riemann_sphere.opgraph import deformation_optimality_report
from riemann_sphere.sampling import random_matrix


@dataclass(frozen=True)
class OptimalityConfig:
    n: int = 3
    trials: int = 20
    samples: tuple = (125, 250, 500, 1000, 2000)
    seed: int = 0


def run(cfg):
    rng = np.random.default_rng(cfg.seed)
    ops = [random_matrix(cfg.n, rng, 10 ** rng.uniform(-0.3, 2.0)) for _ in range(cfg.trials)]
    rows = []
    for s in cfg.samples:
        gaps = [deformation_optimality_report(T, s).maxGap for T in ops]
        rows.append((s, max(gaps), float(np.median(gaps))))
    return SweepTable.from_rows(("samples", "max_gap", "median_gap"), rows)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    sys.stdout.write(run(OptimalityConfig(n=args.n, trials=args.trials, seed=args.seed)).to_csv())


if __name__ == "__main__":
    main()
