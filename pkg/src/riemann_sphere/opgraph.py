"""Graphs of operators as points of the Riemann sphere.

Unbounded operators enter as truncations, i.e. matrices of large norm.  The
graph projection is shared with ``rsphere.phi0_inv`` so both agree bit for bit.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULTS
from .errors import NoGeodesicFound, NotProjection, ParameterOutOfRange, TraceMismatch
from .matfun import op_norm, polar_fun, rank_eps
from .rsphere import (
    Geodesic,
    TangentVector,
    base_projection,
    check_projection,
    finsler_dist,
    geodesic_between,
    graph_projection,
)


def swap(n):
    z = np.zeros((n, n))
    i = np.eye(n)
    return np.block([[z, i], [i, z]]).astype(complex)


def proj_graph(T):
    """Projection onto Gr(T) = {(x, T x)}."""
    return graph_projection(T)


def proj_inv_graph(T):
    """Projection onto invGr(T) = {(T x, x)}."""
    T = np.atleast_2d(np.asarray(T, dtype=complex))
    s = swap(T.shape[0])
    return s @ proj_graph(T) @ s


def subspace_gap(p, q):
    """Gap ||p - q|| between the subspaces with orthogonal projections p and q."""
    return op_norm(np.asarray(p) - np.asarray(q))


def graph_perp_check(T, tol=1e-10):
    """Whether ker P_Gr(T) is the inverse graph of -T*."""
    T = np.atleast_2d(np.asarray(T, dtype=complex))
    n = T.shape[0]
    p = proj_graph(T)
    col = np.vstack([-T.conj().T, np.eye(n)])
    basis = np.linalg.qr(col)[0]
    perp = basis @ basis.conj().T
    return subspace_gap(np.eye(2 * n) - p, perp) <= tol


@dataclass(frozen=True)
class GraphGeodesicReport:
    exists: bool
    unique: bool
    dimST: int
    dimTS: int
    sigma_kept: float
    sigma_dropped: float


def _kernel_dim(m, tol):
    s = np.linalg.svd(m, compute_uv=False)
    r = rank_eps(m, tol)
    kept = float(s[r - 1]) if r > 0 else float("nan")
    dropped = float(s[r]) if r < len(s) else float("nan")
    return m.shape[1] - r, kept, dropped


def geodesic_exists_graphs(S, T, tol=DEFAULTS.rank):
    """Existence and uniqueness of a minimal geodesic between Gr(S) and Gr(T).

    Compares dim ker(1 + T* S) with dim ker(1 + S* T).  In finite dimension the
    two always agree; the smallest kept and largest dropped singular values are
    reported so borderline ranks can be audited.
    """
    S = np.atleast_2d(np.asarray(S, dtype=complex))
    T = np.atleast_2d(np.asarray(T, dtype=complex))
    n = S.shape[0]
    dim_ts, k1, d1 = _kernel_dim(np.eye(n) + T.conj().T @ S, tol)
    dim_st, k2, d2 = _kernel_dim(np.eye(n) + S.conj().T @ T, tol)
    kept = np.nanmin([k1, k2]) if not (np.isnan(k1) and np.isnan(k2)) else float("nan")
    dropped = np.nanmax([d1, d2]) if not (np.isnan(d1) and np.isnan(d2)) else float("nan")
    return GraphGeodesicReport(
        exists=dim_st == dim_ts,
        unique=dim_st == 0 and dim_ts == 0,
        dimST=int(dim_st),
        dimTS=int(dim_ts),
        sigma_kept=float(kept),
        sigma_dropped=float(dropped),
    )


def graph_generator(T):
    """Lower-left block a = V arctan|T| of the geodesic from p0 to P_Gr(T)."""
    T = np.atleast_2d(np.asarray(T, dtype=complex))
    return polar_fun(T, "arctan")


def minimal_geodesic_to_graph(T):
    """The geodesic t -> e^{itZ} p0 e^{-itZ} ending at P_Gr(T), with iZ = X~."""
    return Geodesic.from_base(TangentVector(graph_generator(T)))


def z_matrix(T):
    """Hermitian Z with i Z the anti-Hermitian generator; ||Z|| = arctan ||T||."""
    return -1j * minimal_geodesic_to_graph(T).tilde()


def deformation_schedule(T, t):
    """Bounded deformation A(t) = v tan(t |a|) whose graphs trace the minimal geodesic."""
    if not 0.0 <= t < 1.0:
        raise ParameterOutOfRange(f"t = {t} outside [0, 1)")
    return polar_fun(t * graph_generator(T), "tan")


@dataclass(frozen=True)
class OptimalityReport:
    length: float
    dist: float
    maxGap: float
    t0_grid: tuple = field(default=())
    gaps: tuple = field(default=())


def polygonal_length(points):
    """Sum of operator-norm chords between consecutive points."""
    chords = np.linalg.norm(np.diff(np.asarray(points), axis=0), ord=2, axis=(1, 2))
    return float(chords.sum())


def deformation_optimality_report(T, samples, t0_grid=(0.0, 0.25, 0.5, 0.75)):
    """Polygonal Finsler length of the graph geodesic on [t0, 1] against the distance."""
    if samples < 2:
        raise ParameterOutOfRange("samples must be at least 2")
    g = minimal_geodesic_to_graph(T)
    end = g.at(1.0)
    lengths, dists, gaps = [], [], []
    for t0 in t0_grid:
        ts = np.linspace(t0, 1.0, samples)
        length = polygonal_length(g.sample(ts))
        dist = finsler_dist(g.at(t0), end)
        lengths.append(length)
        dists.append(dist)
        gaps.append(abs(length - dist))
    return OptimalityReport(
        length=lengths[0],
        dist=dists[0],
        maxGap=float(max(gaps)),
        t0_grid=tuple(float(t) for t in t0_grid),
        gaps=tuple(gaps),
    )


def _check_general_projection(p, tol=DEFAULTS.projection):
    p = np.asarray(p, dtype=complex)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise NotProjection("expected a square matrix")
    if op_norm(p - p.conj().T) > tol or op_norm(p @ p - p) > tol:
        raise NotProjection("matrix is not an orthogonal projection")
    return p


def intersection_dims(pS, pT, tol=DEFAULTS.rank):
    """dim(ran pS ∩ ker pT) and dim(ker pS ∩ ran pT), from singular values equal to 1."""
    one = np.eye(pS.shape[0])
    s1 = np.linalg.svd(pS @ (one - pT), compute_uv=False)
    s2 = np.linalg.svd((one - pS) @ pT, compute_uv=False)
    thr = np.sqrt(tol)
    return int(np.sum(s1 > 1.0 - thr)), int(np.sum(s2 > 1.0 - thr))


def common_complement_witness(pS, pT, tol=DEFAULTS.projection):
    """Intermediate projection within distance 1 of both pS and pT, if any.

    The connecting geodesic splits the space into the blocks where the two
    ranges coincide, are orthogonal, or sit at a generic angle; its midpoint is
    the witness.
    """
    pS = _check_general_projection(pS, tol)
    pT = _check_general_projection(pT, tol)
    if abs(np.trace(pS).real - np.trace(pT).real) > 0.5:
        raise TraceMismatch("projections have different ranks")
    d1, d2 = intersection_dims(pS, pT)
    if d1 != d2:
        return None
    check_projection(pS, tol)
    g = geodesic_between(pS, pT, tol)
    return g.at(0.5)


def densify(q, eps, tol=DEFAULTS.projection):
    """A point q0 with ||q0 - q|| < eps and ||q0 - p0|| < 1, on a geodesic from p0 to q.

    t0 = 1 - arcsin(min(eps, 1)) / ||X|| shrunk by a relative 1e-6 so both
    bounds hold strictly in floating point.
    """
    if eps <= 0:
        raise ParameterOutOfRange("eps must be positive")
    q = check_projection(q, tol)
    n = q.shape[0] // 2
    p0 = base_projection(n)
    g = geodesic_between(p0, q, tol)
    if op_norm(g.at(1.0) - q) > 1e-8:
        raise NoGeodesicFound("connecting geodesic misses the target")
    L = g.speed()
    if L == 0.0:
        return p0
    t0 = max(0.0, 1.0 - np.arcsin(min(eps, 1.0)) * (1.0 - 1e-6) / L)
    return g.at(t0)


def densify_parameter(q, eps, tol=DEFAULTS.projection):
    q = check_projection(q, tol)
    g = geodesic_between(base_projection(q.shape[0] // 2), q, tol)
    L = g.speed()
    if L == 0.0:
        return 1.0
    return max(0.0, 1.0 - np.arcsin(min(eps, 1.0)) * (1.0 - 1e-6) / L)


__all__ = [
    "GraphGeodesicReport",
    "OptimalityReport",
    "common_complement_witness",
    "deformation_optimality_report",
    "deformation_schedule",
    "densify",
    "densify_parameter",
    "geodesic_exists_graphs",
    "graph_generator",
    "graph_perp_check",
    "intersection_dims",
    "minimal_geodesic_to_graph",
    "polygonal_length",
    "proj_graph",
    "proj_inv_graph",
    "subspace_gap",
    "swap",
    "z_matrix",
]
