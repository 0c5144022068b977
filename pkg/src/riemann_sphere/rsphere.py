"""Geometry of the Riemann sphere R: rank-n projections of M_2n in the orbit of diag(I, 0).

Projections are plain ``numpy`` arrays, validated on entry.  Tangent vectors
at the base point p0 = diag(I, 0) are stored through their lower-left block
``a``.  Closed forms written with ``a`` in the upper-right corner carry over
by exchanging ``a`` and ``a*``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cossin

from .config import DEFAULTS
from .errors import (
    MobiusPole,
    NotInChart,
    NotProjection,
    NotRsp,
    NotTangent,
    NotUnitary,
    OutsideLogDomain,
    PathTooCoarse,
    ProjectionsTooFar,
)
from .hopf import SphereVector, chart_coordinate, section_sigma
from .matfun import (
    PolarParts,
    expm,
    herm_fun,
    is_hermitian,
    is_unitary,
    op_norm,
    polar,
    principal_log_unitary,
    range_basis,
)


def base_projection(n):
    p = np.zeros((2 * n, 2 * n), dtype=complex)
    p[:n, :n] = np.eye(n)
    return p


def symmetry(p):
    """The reflection 2p - 1."""
    return 2.0 * p - np.eye(p.shape[0])


def blocks(m):
    n = m.shape[0] // 2
    return m[:n, :n], m[:n, n:], m[n:, :n], m[n:, n:]


def check_projection(p, tol=DEFAULTS.projection):
    p = np.asarray(p, dtype=complex)
    if p.ndim != 2 or p.shape[0] != p.shape[1] or p.shape[0] % 2:
        raise NotProjection(f"expected a square matrix of even size, got {p.shape}")
    n = p.shape[0] // 2
    if op_norm(p - p.conj().T) > tol:
        raise NotProjection("matrix is not Hermitian")
    if op_norm(p @ p - p) > tol:
        raise NotProjection("matrix is not idempotent")
    tr = np.trace(p).real
    if abs(tr - n) > max(tol, 1e-3):
        raise NotProjection(f"trace {tr:.6g} differs from n = {n}")
    return p


@dataclass(frozen=True)
class TangentVector:
    """Tangent vector X = [[0, a*], [a, 0]] at p0, stored by its lower-left block."""

    a: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", np.atleast_2d(np.asarray(self.a, dtype=complex)))

    @property
    def n(self):
        return self.a.shape[0]

    def full(self):
        z = np.zeros_like(self.a)
        return np.block([[z, self.a.conj().T], [self.a, z]])

    def tilde(self):
        """X~ = [X, p0], the anti-Hermitian generator of the geodesic."""
        z = np.zeros_like(self.a)
        return np.block([[z, -self.a.conj().T], [self.a, z]])

    def norm(self):
        return op_norm(self.a)

    def scaled(self, t):
        return TangentVector(t * self.a)

    @classmethod
    def from_full(cls, X, tol=DEFAULTS.member):
        X = np.asarray(X, dtype=complex)
        n = X.shape[0] // 2
        x11, x12, x21, x22 = blocks(X)
        scale = max(1.0, op_norm(X))
        if not is_hermitian(X, tol) or op_norm(x11) + op_norm(x22) > tol * scale:
            raise NotTangent("matrix is not a Hermitian codiagonal tangent at p0")
        return cls(0.5 * (x21 + x12.conj().T))

    @classmethod
    def from_tilde(cls, Xt):
        Xt = np.asarray(Xt, dtype=complex)
        _, x12, x21, _ = blocks(Xt)
        return cls(0.5 * (x21 - x12.conj().T))


def geodesic_eval(X, t):
    """Point at time t of the geodesic from p0 with initial velocity X.

    With b = t a the curve is x x* for the isometric column
    x = (cos|b|, b sinc|b|), |b| = (b* b)^(1/2).
    """
    b = t * X.a
    m = polar(b).modulus
    x1 = herm_fun(m, "cos")
    x2 = b @ herm_fun(m, "sinc")
    col = np.vstack([x1, x2])
    g = col @ col.conj().T
    return 0.5 * (g + g.conj().T)


def exp_p0(X):
    return geodesic_eval(X, 1.0)


def commutator(a, b):
    return a @ b - b @ a


def _p11_min(p):
    p11 = blocks(p)[0]
    return float(np.linalg.eigvalsh(0.5 * (p11 + p11.conj().T))[0])


def in_log_domain(p):
    return _p11_min(p) > 0.5


def log_p0(p, tol=DEFAULTS.projection):
    """Inverse of exp_p0 on the set where every principal angle to p0 is below pi/4.

    The guard is lambda_min(p11) > 1/2.  The commutator condition
    ||[p0, p]|| < 1/2 is not enough: it also admits angles in (pi/4, pi/2),
    where the arcsin branch returns pi/2 - theta.
    """
    p = check_projection(p, tol)
    lam = _p11_min(p)
    if lam <= 0.5:
        raise OutsideLogDomain(
            f"smallest eigenvalue of p11 is {lam:.6g} <= 1/2; use log_general instead"
        )
    n = p.shape[0] // 2
    p0 = base_projection(n)
    c = commutator(p0, p)
    rho0 = symmetry(p0)
    mod = polar(c).modulus
    X = rho0 @ herm_fun(2.0 * mod, "asinc") @ c
    return TangentVector.from_full(0.5 * (X + X.conj().T), tol=1e-6)


def log_general(p, q, gap=1e-9, tol=DEFAULTS.projection):
    """Anti-Hermitian X~ with e^X~ p e^-X~ = q and ||X~|| < pi/2."""
    p = check_projection(p, tol)
    q = check_projection(q, tol)
    d = op_norm(p - q)
    if d >= 1.0 - gap:
        raise ProjectionsTooFar(f"||p - q|| = {d:.17g} is not below 1")
    u = symmetry(q) @ symmetry(p)
    return 0.5 * principal_log_unitary(u, gap=1e-15, tol=1e-6)


def finsler_dist(p, q, gap=1e-9):
    return op_norm(log_general(p, q, gap=gap))


def angle(p, tol=DEFAULTS.projection):
    """Angle operator phi = arccos(x1) and the phase w of x2 = w |x2|."""
    p = check_projection(p, tol)
    if not in_log_domain(p):
        raise OutsideLogDomain(f"smallest eigenvalue of p11 is {_p11_min(p):.6g} <= 1/2")
    x = section_sigma(p)
    phi = herm_fun(0.5 * (x.x1 + x.x1.conj().T), "arccos")
    return phi, polar(x.x2).isometry


def complementary_cross_ratio(p, tol=DEFAULTS.projection):
    """Polar parts of the anti-Hermitian commutator [p0, p]."""
    p = check_projection(p, tol)
    return polar(commutator(base_projection(p.shape[0] // 2), p))


@dataclass(frozen=True)
class ChartStatus:
    regular: bool
    graph: bool
    near_base: bool
    p11_invertible: bool

    @property
    def flags(self):
        return (self.regular, self.graph, self.near_base, self.p11_invertible)

    @property
    def agree(self):
        return len(set(self.flags)) == 1


def graph_projection(a):
    """Projection onto the graph {(xi, a xi)}, evaluated through the SVD of a.

    Equal to [[c2, c2 a*], [a c2, a c2 a*]] with c2 = (1 + a* a)^-1; the SVD
    keeps the small blocks accurate when ||a|| is large.
    """
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    u, s, vh = np.linalg.svd(a)
    v = vh.conj().T
    d1 = 1.0 / (1.0 + s * s)
    d2 = s * d1
    d3 = s * s * d1
    p11 = (v * d1) @ vh
    p21 = (u * d2) @ vh
    p22 = (u * d3) @ u.conj().T
    p = np.block([[p11, p21.conj().T], [p21, p22]])
    return 0.5 * (p + p.conj().T)


def phi0_inv(a):
    return graph_projection(a)


def phi0(p, tol=DEFAULTS.chart):
    p = check_projection(p)
    return chart_coordinate(p, tol)


def chart_status(p, tol=DEFAULTS.chart):
    """Four independent tests of membership in the principal chart V0.

    regular: some basis x of ran(p) has invertible top block x1.
    graph: p is the graph projection of x2 x1^+.
    near_base: ||p - p0|| < 1.
    p11_invertible: p11 = x1 x1* is invertible.
    All thresholds are derived from the same ``tol`` on sigma_min(x1).
    """
    p = check_projection(p)
    n = p.shape[0] // 2
    x = range_basis(p)
    if x.shape[1] != n:
        raise NotProjection(f"rank {x.shape[1]} differs from n = {n}")
    x1, x2 = x[:n], x[n:]
    s_min = np.linalg.svd(x1, compute_uv=False)[-1]
    regular = bool(s_min > tol)
    p11_invertible = bool(_p11_min(p) > tol * tol)
    near_base = bool(op_norm(p - base_projection(n)) < np.sqrt(1.0 - tol * tol))
    w, s, vh = np.linalg.svd(x1)
    s_inv = np.where(s > tol, 1.0 / np.where(s > tol, s, 1.0), 0.0)
    a = x2 @ (vh.conj().T * s_inv) @ w.conj().T
    graph = bool(op_norm(graph_projection(a) - p) <= np.sqrt(tol))
    return ChartStatus(regular, graph, near_base, p11_invertible)


def mobius(W, a, tol=DEFAULTS.chart):
    """Action (e + f a)(c + d a)^-1 of W = [[c, d], [e, f]] on graph coordinates."""
    c, d, e, f = blocks(np.asarray(W, dtype=complex))
    den = c + d @ a
    s = np.linalg.svd(den, compute_uv=False)
    if s[-1] <= tol * max(1.0, s[0]):
        raise MobiusPole(f"c + d a is singular (sigma_min = {s[-1]:.3g})")
    return np.linalg.solve(den.T, (e + f @ a).T).T


def chart_transition(u_t, v_t, a, tol=DEFAULTS.chart):
    """Change of coordinates between the charts attached to two unitaries.

    Uses W = (u v)*; the induced map on graph coordinates is mobius(W, .).
    """
    u_t = np.asarray(u_t, dtype=complex)
    v_t = np.asarray(v_t, dtype=complex)
    if not (is_unitary(u_t) and is_unitary(v_t)):
        raise NotUnitary("chart transition needs unitary frames")
    return mobius((u_t @ v_t).conj().T, np.asarray(a, dtype=complex), tol)


def _tangent_check(p, Y, tol):
    Y = np.asarray(Y, dtype=complex)
    scale = max(1.0, op_norm(Y))
    if not is_hermitian(Y, tol):
        raise NotTangent("tangent matrix is not Hermitian")
    if op_norm(Y @ p - (np.eye(p.shape[0]) - p) @ Y) > tol * scale:
        raise NotTangent("tangent matrix is not codiagonal with respect to p")
    return Y


def tangent_chart(p, Y, tol=1e-7):
    """Differential of phi0 at p applied to the tangent Y."""
    p = check_projection(p)
    x = section_sigma(p)
    Y = _tangent_check(p, Y, tol)
    yx = SphereVector.from_column(Y @ x.column)
    x1_inv = np.linalg.inv(x.x1)
    return yx.x2 @ x1_inv - x.x2 @ x1_inv @ yx.x1 @ x1_inv


def tangent_chart_inv(a, a_dot):
    """Tangent at phi0_inv(a) of the curve through a with velocity a_dot.

    Y = A' c2 A* + A c2 A'* - A b A*, with A = (1; a), A' = (0; a_dot),
    c2 = (1 + a* a)^-1 and b = c2 (a_dot* a + a* a_dot) c2.
    """
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    a_dot = np.atleast_2d(np.asarray(a_dot, dtype=complex))
    n = a.shape[0]
    c2 = np.linalg.inv(np.eye(n) + a.conj().T @ a)
    c2 = 0.5 * (c2 + c2.conj().T)
    A = np.vstack([np.eye(n), a])
    Ad = np.vstack([np.zeros((n, n)), a_dot])
    b = c2 @ (a_dot.conj().T @ a + a.conj().T @ a_dot) @ c2
    Y = Ad @ c2 @ A.conj().T + A @ c2 @ Ad.conj().T - A @ b @ A.conj().T
    return 0.5 * (Y + Y.conj().T)


def finsler_pullback_norm(a, a_dot):
    return op_norm(tangent_chart_inv(a, a_dot))


def frame_of(p, tol=DEFAULTS.projection):
    """Unitary F with F p0 F* = p, columns from a phase-fixed eigenbasis of p."""
    p = check_projection(p, tol)
    n = p.shape[0] // 2
    _, vecs = np.linalg.eigh(0.5 * (p + p.conj().T))
    vecs = vecs[:, ::-1]
    idx = np.argmax(np.abs(vecs), axis=0)
    phase = vecs[idx, np.arange(vecs.shape[1])]
    vecs = vecs * (np.abs(phase) / phase)
    return np.hstack([vecs[:, :n][:, ::-1], vecs[:, n:][:, ::-1]])


@dataclass(frozen=True)
class Geodesic:
    """Geodesic t -> F gamma_a(t) F*, where gamma_a starts at p0."""

    base: np.ndarray
    generator: TangentVector
    frame: np.ndarray

    def at(self, t):
        g = self.frame @ geodesic_eval(self.generator, t) @ self.frame.conj().T
        return 0.5 * (g + g.conj().T)

    def sample(self, ts):
        """Points at all parameters in ``ts`` from a single SVD a = U S W*.

        The isometric column at time t is (W cos(tS) W*, U sin(tS) W*).
        """
        ts = np.asarray(ts, dtype=float)
        u, sv, wh = np.linalg.svd(self.generator.a)
        w = wh.conj().T
        ang = ts[:, None] * sv[None, :]
        x1 = np.einsum("ij,kj,jl->kil", w, np.cos(ang), wh)
        x2 = np.einsum("ij,kj,jl->kil", u, np.sin(ang), wh)
        col = np.concatenate([x1, x2], axis=1)
        col = np.einsum("ij,kjl->kil", self.frame, col)
        return np.einsum("kij,klj->kil", col, col.conj())

    def speed(self):
        return self.generator.norm()

    def tilde(self):
        """The anti-Hermitian generator in the ambient frame."""
        return self.frame @ self.generator.tilde() @ self.frame.conj().T

    @classmethod
    def from_base(cls, X):
        n = X.n
        return cls(base_projection(n), X, np.eye(2 * n, dtype=complex))


def geodesic_between(p, q, tol=DEFAULTS.projection):
    """A geodesic of length at most pi/2 from p to q.

    In the frame of p the target is spanned by [u1 C; u2 S] u1*, read off the
    CS decomposition of a unitary completion of a basis of ran(q); the
    generator is then a = u2 diag(theta) u1*.
    """
    p = check_projection(p, tol)
    q = check_projection(q, tol)
    n = p.shape[0] // 2
    F = frame_of(p, tol)
    qf = F.conj().T @ q @ F
    _, vecs = np.linalg.eigh(0.5 * (qf + qf.conj().T))
    full = np.hstack([vecs[:, n:], vecs[:, :n]])
    (u1, u2), theta, _ = cossin(full, p=n, q=n, separate=True)
    a = (u2 * theta) @ u1.conj().T
    return Geodesic(p, TangentVector(a), F)


# parallel transport -------------------------------------------------------

def _stencil_derivative(samples, h):
    """Fourth-order finite differences on a uniform grid of matrices."""
    f = samples
    m = len(f)
    if m < 5:
        raise PathTooCoarse("parallel transport needs at least 5 samples")
    d = np.empty_like(f)
    d[2:-2] = (-f[4:] + 8 * f[3:-1] - 8 * f[1:-3] + f[:-4]) / (12 * h)
    d[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h)
    d[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) / (12 * h)
    d[-1] = (25 * f[-1] - 48 * f[-2] + 36 * f[-3] - 16 * f[-4] + 3 * f[-5]) / (12 * h)
    d[-2] = (3 * f[-1] + 10 * f[-2] - 18 * f[-3] + 6 * f[-4] - f[-5]) / (12 * h)
    return d


def parallel_transport(samples, times, max_jump=0.5):
    """Transport unitary g(T) solving g' = [p', p] g, g(t0) = 1.

    ``samples`` are projections at uniformly spaced ``times``; their count must
    be 2 * steps + 1 so every classical Runge-Kutta step of width 2h finds its
    midpoint on the grid.
    """
    samples = np.asarray(samples, dtype=complex)
    times = np.asarray(times, dtype=float)
    m = len(samples)
    if m != len(times):
        raise ValueError("samples and times differ in length")
    if m < 5 or m % 2 == 0:
        raise PathTooCoarse("need an odd number (>= 5) of samples")
    h = (times[-1] - times[0]) / (m - 1)
    if not np.allclose(np.diff(times), h, rtol=1e-9, atol=1e-12):
        raise ValueError("times must be uniformly spaced")
    jumps = [op_norm(samples[k + 1] - samples[k]) for k in range(m - 1)]
    if max(jumps) >= max_jump:
        raise PathTooCoarse(f"consecutive samples differ by {max(jumps):.3g} >= {max_jump}")
    dp = _stencil_derivative(samples, h)
    gen = np.einsum("kij,kjl->kil", dp, samples) - np.einsum("kij,kjl->kil", samples, dp)
    g = np.eye(samples.shape[1], dtype=complex)
    for k in range(0, m - 1, 2):
        step = 2 * h
        k1 = gen[k] @ g
        k2 = gen[k + 1] @ (g + 0.5 * step * k1)
        k3 = gen[k + 1] @ (g + 0.5 * step * k2)
        k4 = gen[k + 2] @ (g + step * k3)
        g = g + step / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return g


def sample_path(curve, t0, t1, steps):
    times = np.linspace(t0, t1, 2 * steps + 1)
    return np.array([curve(t) for t in times]), times


def transport_along(curve, t0=0.0, t1=1.0, steps=200):
    samples, times = sample_path(curve, t0, t1, steps)
    return parallel_transport(samples, times)


def transport_error_estimate(curve, t0=0.0, t1=1.0, steps=200):
    """Richardson estimate of the error of ``transport_along`` at ``steps``."""
    fine = transport_along(curve, t0, t1, steps)
    coarse = transport_along(curve, t0, t1, max(2, steps // 2))
    return op_norm(fine - coarse) / 15.0


# rsp isomorphism ----------------------------------------------------------

def _rsp_frame(p, u, tol):
    p = np.asarray(p, dtype=complex)
    u = np.asarray(u, dtype=complex)
    if not is_hermitian(p, tol) or op_norm(p @ p - p) > tol:
        raise NotRsp("p is not an orthogonal projection")
    if not is_unitary(u, tol):
        raise NotRsp("u is not unitary")
    if op_norm(u @ p @ u.conj().T - (np.eye(p.shape[0]) - p)) > tol:
        raise NotRsp("u p u* differs from 1 - p")
    w = range_basis(p)
    return np.hstack([w, u @ w])


def rsp_isomorphism(m, p, u, tol=DEFAULTS.member):
    """J(m) = [[x, y], [z, t]] over A = pMp, realised in an orthonormal basis w of ran p.

    x = w* m w, y = w* m u w, z = w* u* m w, t = w* u* m u w.
    """
    Q = _rsp_frame(p, u, tol)
    return Q.conj().T @ np.asarray(m, dtype=complex) @ Q


def rsp_inverse(j, p, u, tol=DEFAULTS.member):
    """Inverse of J: x + y u^-1 + u z + u t u^-1 read back in M."""
    Q = _rsp_frame(p, u, tol)
    return Q @ np.asarray(j, dtype=complex) @ Q.conj().T


__all__ = [
    "ChartStatus",
    "Geodesic",
    "PolarParts",
    "TangentVector",
    "angle",
    "base_projection",
    "blocks",
    "chart_status",
    "chart_transition",
    "check_projection",
    "commutator",
    "complementary_cross_ratio",
    "exp_p0",
    "expm",
    "finsler_dist",
    "finsler_pullback_norm",
    "frame_of",
    "geodesic_between",
    "geodesic_eval",
    "graph_projection",
    "in_log_domain",
    "log_general",
    "log_p0",
    "mobius",
    "parallel_transport",
    "phi0",
    "phi0_inv",
    "rsp_inverse",
    "rsp_isomorphism",
    "sample_path",
    "symmetry",
    "tangent_chart",
    "tangent_chart_inv",
    "transport_along",
    "transport_error_estimate",
]
