"""Where the closed-form logarithm stops inverting the exponential.

Sweeps the angle theta of the rotation projection in C^2 and compares the
arcsin closed form (without the p11 > 1/2 guard) to the principal-log route.
Beyond theta = pi/4 the closed form returns pi/2 - theta although the
commutator norm sin(2 theta)/2 stays below 1/2.
"""

import argparse
import sys

import numpy as np

from riemann_sphere.io import SweepTable
from riemann_sphere.matfun import herm_fun, op_norm, polar
from riemann_sphere.rsphere import (
    TangentVector,
    base_projection,
    commutator,
    exp_p0,
    log_general,
    symmetry,
)


def unguarded_log(p):
    p0 = base_projection(p.shape[0] // 2)
    c = commutator(p0, p)
    X = symmetry(p0) @ herm_fun(2 * polar(c).modulus, "asinc") @ c
    return TangentVector.from_full(X)


def run(num):
    rows = []
    for theta in np.linspace(0.0, np.pi / 2, num, endpoint=False):
        c, s = np.cos(theta), np.sin(theta)
        p = np.array([[c * c, c * s], [c * s, s * s]], dtype=complex)
        X = unguarded_log(p)
        rows.append((
            theta,
            op_norm(commutator(base_projection(1), p)),
            X.norm(),
            op_norm(exp_p0(X) - p),
            op_norm(log_general(base_projection(1), p)),
            p[0, 0].real,
        ))
    return SweepTable.from_rows(
        ("theta", "commutator_norm", "closed_form_angle", "closed_form_error",
         "principal_angle", "p11"),
        rows,
    )


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--num", type=int, default=19)
    args = ap.parse_args(argv)
    sys.stdout.write(run(args.num).to_csv())


if __name__ == "__main__":
    main()
