"""Error of the parallel-transport integrator along geodesics versus step count.

Writes a CSV with the error against e^{X~}, the Richardson estimate and the
ratio to the previous row (about 16 for a fourth-order scheme).
"""

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from riemann_sphere.io import SweepTable
from riemann_sphere.matfun import expm, op_norm
from riemann_sphere.rsphere import geodesic_eval, transport_along, transport_error_estimate
from riemann_sphere.sampling import random_tangent


@dataclass(frozen=True)
class TransportConfig:
    n: int = 4
    speed: float = 1.5
    steps: tuple = (25, 50, 100, 200, 400, 800)
    seed: int = 0


def run(cfg):
    X = random_tangent(cfg.n, np.random.default_rng(cfg.seed), cfg.speed)
    target = expm(X.tilde())
    curve = lambda t: geodesic_eval(X, t)
    rows, prev = [], None
    for s in cfg.steps:
        err = op_norm(transport_along(curve, 0.0, 1.0, s) - target)
        est = transport_error_estimate(curve, 0.0, 1.0, s)
        rows.append((s, err, est, prev / err if prev else float("nan")))
        prev = err
    return SweepTable.from_rows(("steps", "error", "richardson", "ratio"), rows)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--speed", type=float, default=1.5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    cfg = TransportConfig(n=args.n, speed=args.speed, seed=args.seed)
    sys.stdout.write(run(cfg).to_csv())


if __name__ == "__main__":
    main()
