"""Norm growth of the truncated differentiation deformation over N and t.

For each N the truncated norm tan(t arctan(2 pi N)) approaches tan(t pi/2);
the subspace gap column checks that the geodesic passes through the graphs.
"""

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from riemann_sphere.cli import diffop_table
from riemann_sphere.io import SweepTable


@dataclass(frozen=True)
class DiffopConfig:
    Ns: tuple = (8, 16, 32, 64, 128)
    grid: tuple = tuple(np.round(np.arange(1, 10) / 10, 2))


def run(cfg):
    rows = []
    for N in cfg.Ns:
        table = diffop_table(N, np.array(cfg.grid))
        for t, tn, lim, gap in zip(*table.series):
            rows.append((N, t, tn, lim, (lim - tn) / lim, gap))
    return SweepTable.from_rows(
        ("N", "t", "truncatedNorm", "analyticLimit", "relative_gap", "subspace_gap"), rows
    )


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, nargs="+", default=[8, 16, 32, 64, 128])
    args = ap.parse_args(argv)
    sys.stdout.write(run(DiffopConfig(Ns=tuple(args.N))).to_csv())


if __name__ == "__main__":
    main()
