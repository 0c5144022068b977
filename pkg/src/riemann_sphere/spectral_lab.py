"""Desk-scale versions of the differentiation-operator and multi-geodesic examples.

Fourier modes are ordered -N, ..., N; index 0 is the constant mode, on which
the differentiation operator vanishes and the geodesic is constant.
"""

from dataclasses import dataclass

import numpy as np

from .config import DEFAULTS
from .errors import IndexNonZero, KernelMismatch, ParameterOutOfRange
from .matfun import is_unitary, null_space, op_norm, principal_log_unitary, rank_eps
from .opgraph import proj_graph, proj_inv_graph
from .rsphere import Geodesic, TangentVector, base_projection, symmetry


@dataclass(frozen=True)
class FourierTruncation:
    N: int

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ParameterOutOfRange(f"N must be a positive integer, got {self.N}")

    @property
    def indices(self):
        return np.arange(-self.N, self.N + 1)

    @property
    def dim(self):
        return 2 * self.N + 1

    @property
    def frequencies(self):
        return 2.0 * np.pi * self.indices


def build_diff_op(trunc):
    """Compression of -i d/dx to span{e^(2 pi i n x)}: diag(2 pi n)."""
    return np.diag(trunc.frequencies).astype(complex)


@dataclass(frozen=True)
class DiffGraphBlocks:
    D1: np.ndarray
    D2: np.ndarray
    D3: np.ndarray
    modes: np.ndarray


def diff_graph_blocks(trunc):
    """Diagonal blocks of the graph projection on the non-constant modes."""
    modes = trunc.indices[trunc.indices != 0]
    w = 2.0 * np.pi * modes
    den = 1.0 + w * w
    return DiffGraphBlocks(
        D1=np.diag(1.0 / den), D2=np.diag(w / den), D3=np.diag(w * w / den), modes=modes
    )


def assemble_graph_projection(trunc):
    """Full graph projection: the D-blocks plus diag(1, 0) on the constant mode."""
    b = diff_graph_blocks(trunc)
    nz = trunc.indices != 0
    d1 = np.ones(trunc.dim)
    d2 = np.zeros(trunc.dim)
    d3 = np.zeros(trunc.dim)
    d1[nz] = np.diag(b.D1)
    d2[nz] = np.diag(b.D2)
    d3[nz] = np.diag(b.D3)
    return np.block([[np.diag(d1), np.diag(d2)], [np.diag(d2), np.diag(d3)]]).astype(complex)


def angles(trunc):
    """a_n = arctan(2 pi |n|), equal to arccos(1 / sqrt(1 + 4 pi^2 n^2))."""
    return np.arctan(2.0 * np.pi * np.abs(trunc.indices))


def z0_generator(trunc):
    """Hermitian Z0 with e^{i t Z0} p0 e^{-i t Z0} the geodesic to the differentiation graph.

    Z0 = i M with M real antisymmetric: upper-right entries -a_n for n < 0 and
    a_n for n > 0, lower-left entries the negatives, zero on the constant mode.
    """
    d = trunc.dim
    a = angles(trunc)
    sgn = np.sign(trunc.indices)
    M = np.zeros((2 * d, 2 * d))
    M[np.arange(d), d + np.arange(d)] = sgn * a
    M[d + np.arange(d), np.arange(d)] = -sgn * a
    return 1j * M


def diff_geodesic(trunc):
    """Geodesic from p0 to the graph projection of the truncated operator."""
    return Geodesic.from_base(TangentVector(np.diag(np.sign(trunc.indices) * angles(trunc))))


def deformation_T(trunc, t):
    """diag(tan(t arctan(2 pi n))), zero on the constant mode."""
    if not 0.0 <= t < 1.0:
        raise ParameterOutOfRange(f"t = {t} outside [0, 1)")
    return np.diag(np.tan(t * np.arctan(trunc.frequencies))).astype(complex)


@dataclass(frozen=True)
class NormGrowth:
    truncatedNorm: float
    analyticLimit: float


def norm_growth(trunc, t):
    if not 0.0 <= t < 1.0:
        raise ParameterOutOfRange(f"t = {t} outside [0, 1)")
    return NormGrowth(
        truncatedNorm=float(np.tan(t * np.arctan(2.0 * np.pi * trunc.N))),
        analyticLimit=float(np.tan(t * np.pi / 2.0)),
    )


# multi-geodesic families ---------------------------------------------------

def kernel_bases(F, tol=DEFAULTS.rank):
    """Orthonormal bases (K1, K2) of ker F* and ker F."""
    F = np.atleast_2d(np.asarray(F, dtype=complex))
    return null_space(F.conj().T, tol), null_space(F, tol)


def _require_index_zero(F, tol):
    K1, K2 = kernel_bases(F, tol)
    if K1.shape[1] != K2.shape[1]:
        raise KernelMismatch(
            f"dim ker F = {K2.shape[1]} differs from dim ker F* = {K1.shape[1]}"
        )
    return K1, K2


def _symmetry_log(p, q):
    # half the principal log of (2q - 1)(2p - 1), for projections of any rank
    return 0.5 * principal_log_unitary(symmetry(q) @ symmetry(p), gap=1e-15, tol=1e-6)


def _embeddings(K1, K2):
    n = K1.shape[0]
    z = np.zeros_like(K1)
    return np.vstack([K1, z]), np.vstack([np.zeros((n, K2.shape[1])), K2])


def multi_geodesics(F, u, tol=DEFAULTS.rank):
    """The geodesic from p0 to the inverse graph of F with phase u on the kernels.

    On H' = (ker F* + 0) + (0 + ker F) the curve is a quarter turn with phase u;
    on the rest it is the unique geodesic joining the restricted projections.
    """
    F = np.atleast_2d(np.asarray(F, dtype=complex))
    n = F.shape[0]
    K1, K2 = _require_index_zero(F, tol)
    k = K1.shape[1]
    u = np.atleast_2d(np.asarray(u, dtype=complex))
    if k == 0:
        raise KernelMismatch("F is invertible; the geodesic is unique")
    if u.shape != (k, k) or not is_unitary(u):
        raise KernelMismatch(f"u must be a {k}x{k} unitary")
    E_top, E_bot = _embeddings(K1, K2)
    p_h10 = E_top @ E_top.conj().T
    p_h01 = E_bot @ E_bot.conj().T
    p0 = base_projection(n)
    q = proj_inv_graph(F)
    rest = _symmetry_log(p0 - p_h10, q - p_h01)
    quarter = 0.5 * np.pi * (E_bot @ u.conj().T @ E_top.conj().T)
    quarter = quarter - quarter.conj().T
    return Geodesic.from_base(TangentVector.from_tilde(rest + quarter))


def jacobi_field(F, udot, t, u=None, tol=DEFAULTS.rank):
    """Variation field d/ds of multi_geodesics(F, u e^{s udot}) at s = 0.

    On H' it is [[0, cs w], [cs w*, 0]] with w = u udot and
    cs = cos(t pi/2) sin(t pi/2), zero elsewhere.
    """
    F = np.atleast_2d(np.asarray(F, dtype=complex))
    K1, K2 = _require_index_zero(F, tol)
    k = K1.shape[1]
    udot = np.atleast_2d(np.asarray(udot, dtype=complex))
    if udot.shape != (k, k):
        raise KernelMismatch(f"udot must be {k}x{k}")
    if op_norm(udot + udot.conj().T) > 1e-10 * max(1.0, op_norm(udot)):
        raise ValueError("udot must be anti-Hermitian")
    u = np.eye(k) if u is None else np.atleast_2d(np.asarray(u, dtype=complex))
    E_top, E_bot = _embeddings(K1, K2)
    cs = np.cos(t * np.pi / 2) * np.sin(t * np.pi / 2)
    w = cs * (u @ udot)
    J = E_top @ w @ E_bot.conj().T
    return J + J.conj().T


def anti_hermitian_basis(k):
    """The k^2 canonical real basis of anti-Hermitian k x k matrices."""
    out = []
    for j in range(k):
        e = np.zeros((k, k), dtype=complex)
        e[j, j] = 1j
        out.append(e)
    for j in range(k):
        for l in range(j + 1, k):
            e = np.zeros((k, k), dtype=complex)
            e[j, l], e[l, j] = 1.0, -1.0
            out.append(e)
            e = np.zeros((k, k), dtype=complex)
            e[j, l], e[l, j] = 1j, 1j
            out.append(e)
    return out


@dataclass(frozen=True)
class ConjugateIndexReport:
    kernel_dim: int
    index: int
    gram_min_eig: float


def conjugate_index_report(F, tol=DEFAULTS.rank):
    F = np.atleast_2d(np.asarray(F, dtype=complex))
    r = rank_eps(F, tol)
    dim_ker = F.shape[1] - r
    dim_coker = F.shape[0] - r
    if dim_ker != dim_coker:
        raise IndexNonZero(f"dim ker F = {dim_ker} but dim coker F = {dim_coker}")
    if dim_ker == 0:
        return ConjugateIndexReport(0, 0, float("nan"))
    fields = [jacobi_field(F, e, 0.5, tol=tol) for e in anti_hermitian_basis(dim_ker)]
    V = np.array([np.concatenate([f.real.ravel(), f.imag.ravel()]) for f in fields])
    gram = V @ V.T
    eig = np.linalg.eigvalsh(gram)
    index = int(np.sum(eig > 1e-12 * max(1.0, eig[-1])))
    return ConjugateIndexReport(dim_ker, index, float(eig[0]))


def conjugate_index(F, tol=DEFAULTS.rank):
    """Real dimension of the Jacobi fields vanishing at both ends, k^2 for dim ker F = k."""
    return conjugate_index_report(F, tol).index


__all__ = [
    "ConjugateIndexReport",
    "DiffGraphBlocks",
    "FourierTruncation",
    "NormGrowth",
    "angles",
    "anti_hermitian_basis",
    "assemble_graph_projection",
    "build_diff_op",
    "conjugate_index",
    "conjugate_index_report",
    "deformation_T",
    "diff_geodesic",
    "diff_graph_blocks",
    "jacobi_field",
    "kernel_bases",
    "multi_geodesics",
    "norm_growth",
    "proj_graph",
    "z0_generator",
]
