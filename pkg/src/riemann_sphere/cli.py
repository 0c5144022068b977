"""Command-line front end.

Matrices are read as JSON documents {"rows", "cols", "data": [[re, im], ...]},
either from a file or inline.  Sweeps are written as CSV on stdout.

Exit codes: 0 success, 1 failed self-test, 2 parse errors, 3 geometry-domain
errors, 4 nonzero Fredholm index.
"""

import argparse
import json
import sys

import numpy as np

from . import opgraph, rsphere, sampling, spectral_lab
from .config import DEFAULTS
from .errors import GeometryError, IndexNonZero, ParseError
from .io import MatrixDocument, SweepTable, read_matrix
from .matfun import expm, op_norm

EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_INDEX = 4


def parse_grid(text):
    """Parse ``start:stop:num`` or a comma-separated list of parameters."""
    try:
        if ":" in text:
            start, stop, num = text.split(":")
            grid = np.linspace(float(start), float(stop), int(num))
        else:
            grid = np.array([float(v) for v in text.split(",") if v.strip()])
    except ValueError as exc:
        raise ParseError(f"bad grid {text!r}: {exc}") from exc
    if grid.size == 0:
        raise ParseError("empty grid")
    return np.sort(grid)


def _emit_json(obj, out):
    out.write(json.dumps(obj) + "\n")


def cmd_geodesic(args, out):
    a = read_matrix(args.a)
    X = rsphere.TangentVector(a)
    grid = parse_grid(args.t)
    p0 = rsphere.base_projection(X.n)
    norm = X.norm()
    rows, mats = [], []
    for t in grid:
        g = rsphere.geodesic_eval(X, t)
        mats.append(MatrixDocument.from_array(g).to_dict())
        rows.append((t, op_norm(g - p0), np.sin(min(abs(t) * norm, np.pi / 2))))
    if args.matrices:
        with open(args.matrices, "w", encoding="utf-8") as fh:
            json.dump([{"t": float(t), "matrix": m} for t, m in zip(grid, mats)], fh)
            fh.write("\n")
    out.write(SweepTable.from_rows(("t", "dist_to_base", "sin_law"), rows).to_csv())


def logmap(p, q, tol):
    """Generator X~ from p to q and the branch used to compute it."""
    n = p.shape[0] // 2
    p = rsphere.check_projection(p, tol)
    q = rsphere.check_projection(q, tol)
    if op_norm(p - rsphere.base_projection(n)) == 0.0 and rsphere.in_log_domain(q):
        return rsphere.log_p0(q, tol).tilde(), "closed-form"
    return rsphere.log_general(p, q, tol=tol), "general"


def cmd_logmap(args, out):
    p, q = read_matrix(args.p), read_matrix(args.q)
    gen, branch = logmap(p, q, args.tol)
    _emit_json(
        {"branch": branch, "dist": op_norm(gen), "generator": MatrixDocument.from_array(gen).to_dict()},
        out,
    )


def cmd_dist(args, out):
    p, q = read_matrix(args.p), read_matrix(args.q)
    p = rsphere.check_projection(p, args.tol)
    q = rsphere.check_projection(q, args.tol)
    out.write(f"{rsphere.finsler_dist(p, q):.17g}\n")


def cmd_graph_proj(args, out):
    T = read_matrix(args.T)
    m = opgraph.proj_inv_graph(T) if args.inverse else opgraph.proj_graph(T)
    _emit_json(MatrixDocument.from_array(m).to_dict(), out)


def deform_table(T, samples):
    if samples < 2:
        raise ParseError("samples must be at least 2")
    g = opgraph.minimal_geodesic_to_graph(T)
    end = g.at(1.0)
    top = np.arctan(op_norm(T))
    ts = np.arange(samples) / samples
    rows, length, prev = [], 0.0, None
    for t in ts:
        cur = g.at(t)
        if prev is not None:
            length += op_norm(cur - prev)
        prev = cur
        A = opgraph.deformation_schedule(T, t)
        rows.append((t, op_norm(A), np.tan(t * top), length, rsphere.finsler_dist(cur, end)))
    return SweepTable.from_rows(("t", "norm_A", "tan_law", "length_so_far", "dist_to_end"), rows)


def cmd_deform(args, out):
    out.write(deform_table(read_matrix(args.T), args.samples).to_csv())


def diffop_table(N, grid):
    trunc = spectral_lab.FourierTruncation(N)
    g = spectral_lab.diff_geodesic(trunc)
    rows = []
    for t in grid:
        ng = spectral_lab.norm_growth(trunc, t)
        gap = opgraph.subspace_gap(g.at(t), opgraph.proj_graph(spectral_lab.deformation_T(trunc, t)))
        rows.append((t, ng.truncatedNorm, ng.analyticLimit, gap))
    return SweepTable.from_rows(("t", "truncatedNorm", "analyticLimit", "subspace_gap"), rows)


def cmd_diffop(args, out):
    out.write(diffop_table(args.N, parse_grid(args.t)).to_csv())


def cmd_jacobi(args, out):
    F = read_matrix(args.F)
    rep = spectral_lab.conjugate_index_report(F)
    _emit_json({"kernelDim": rep.kernel_dim, "index": rep.index}, out)


def cmd_density(args, out):
    q = rsphere.check_projection(read_matrix(args.q), args.tol)
    n = q.shape[0] // 2
    t0 = opgraph.densify_parameter(q, args.eps, args.tol)
    q0 = opgraph.densify(q, args.eps, args.tol)
    _emit_json(
        {
            "t0": t0,
            "dist_to_target": op_norm(q0 - q),
            "dist_to_base": op_norm(q0 - rsphere.base_projection(n)),
            "q0": MatrixDocument.from_array(q0).to_dict(),
        },
        out,
    )


def selftest_rows(seed, steps, n=3):
    """Quick randomized audit of the main identities: (name, error, bound)."""
    rng = np.random.default_rng(seed)
    rows = []
    X = sampling.random_tangent(n, rng, 0.6)
    p = rsphere.exp_p0(X)
    rows.append(("log_exp", op_norm(rsphere.log_p0(p).a - X.a), 1e-8))
    t = 0.7
    E = expm(t * X.tilde())
    oracle = E @ rsphere.base_projection(n) @ E.conj().T
    rows.append(("closed_form", op_norm(rsphere.geodesic_eval(X, t) - oracle), 1e-10))
    d = op_norm(rsphere.geodesic_eval(X, 0.9) - rsphere.geodesic_eval(X, 0.2))
    rows.append(("sine_law", abs(d - np.sin(0.7 * X.norm())), 1e-9))
    g = rsphere.transport_along(lambda s: rsphere.geodesic_eval(X, s), 0.0, 1.0, steps)
    rows.append(("transport", op_norm(g - expm(X.tilde())), 1e-6))
    T = sampling.random_matrix(n, rng, 5.0)
    geo = opgraph.minimal_geodesic_to_graph(T)
    rows.append(("graph_endpoint", op_norm(geo.at(1.0) - opgraph.proj_graph(T)), 1e-9))
    F = sampling.index_zero_matrix(4, 2, rng)
    rows.append(("conjugate_index", abs(spectral_lab.conjugate_index(F) - 4), 0.5))
    return rows


def cmd_selftest(args, out):
    rows = selftest_rows(args.seed, args.steps)
    ok = True
    for name, err, bound in rows:
        passed = err < bound
        ok &= passed
        out.write(f"{name:16s} {err:.3e} < {bound:.0e} {'PASS' if passed else 'FAIL'}\n")
    return 0 if ok else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="rsphere", description=__doc__.splitlines()[0])
    parser.add_argument("--tol", type=float, default=DEFAULTS.projection,
                        help="tolerance for validating input projections")
    parser.add_argument("--seed", type=int, default=0, help="seed for selftest")
    parser.add_argument("--steps", type=int, default=200, help="transport integration steps")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("geodesic", help="sample the geodesic from p0 with initial block a")
    s.add_argument("--a", required=True)
    s.add_argument("--t", default="0:1:11", help="start:stop:num or comma list")
    s.add_argument("--matrices", help="write the sampled projections to this JSON file")
    s.set_defaults(func=cmd_geodesic)

    s = sub.add_parser("logmap", help="generator and distance between two projections")
    s.add_argument("--p", required=True)
    s.add_argument("--q", required=True)
    s.set_defaults(func=cmd_logmap)

    s = sub.add_parser("dist", help="Finsler distance between two projections")
    s.add_argument("--p", required=True)
    s.add_argument("--q", required=True)
    s.set_defaults(func=cmd_dist)

    s = sub.add_parser("graph-proj", help="projection onto the graph of T")
    s.add_argument("--T", required=True)
    s.add_argument("--inverse", action="store_true", help="use the inverse graph {(Tx, x)}")
    s.set_defaults(func=cmd_graph_proj)

    s = sub.add_parser("deform", help="bounded deformation sweep toward Gr(T)")
    s.add_argument("--T", required=True)
    s.add_argument("--samples", type=int, default=10)
    s.set_defaults(func=cmd_deform)

    s = sub.add_parser("diffop", help="truncated differentiation operator sweep")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--t", default="0:0.9:10")
    s.set_defaults(func=cmd_diffop)

    s = sub.add_parser("jacobi", help="kernel dimension and conjugate index of F")
    s.add_argument("--F", required=True)
    s.set_defaults(func=cmd_jacobi)

    s = sub.add_parser("density", help="approximate q by a point in the open chart at p0")
    s.add_argument("--q", required=True)
    s.add_argument("--eps", type=float, default=0.1)
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("selftest", help="randomized audit of the main identities")
    s.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args, out)
    except ParseError as exc:
        print(f"ParseError: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except IndexNonZero as exc:
        print(f"IndexNonZero: {exc}", file=sys.stderr)
        return EXIT_INDEX
    except GeometryError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
