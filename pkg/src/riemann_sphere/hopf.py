"""The unitary sphere K of block columns and the Hopf map x -> x x*.

A point of K is an isometric 2n x n column (x1; x2).  In M_n(C) the isometry
condition alone characterises K, because any isometry C^n -> C^2n extends to
a unitary of C^2n.
"""

from dataclasses import dataclass

import numpy as np

from .config import DEFAULTS
from .errors import (
    DimensionMismatch,
    NotCodiagonal,
    NotInChart,
    NotInSphere,
    NotSameFiber,
    NotTangent,
    NotUnitary,
    TopBlockSingular,
)
from .matfun import is_hermitian, is_unitary, op_norm


def _as_square(m, name):
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {m.shape}")
    return m


@dataclass(frozen=True)
class SphereVector:
    x1: np.ndarray
    x2: np.ndarray

    def __post_init__(self):
        x1 = _as_square(self.x1, "x1")
        x2 = _as_square(self.x2, "x2")
        if x1.shape != x2.shape:
            raise DimensionMismatch(f"blocks differ in shape: {x1.shape} vs {x2.shape}")
        object.__setattr__(self, "x1", x1)
        object.__setattr__(self, "x2", x2)

    @property
    def n(self):
        return self.x1.shape[0]

    @property
    def column(self):
        return np.vstack([self.x1, self.x2])

    @classmethod
    def from_column(cls, col):
        col = np.asarray(col, dtype=complex)
        n = col.shape[1]
        if col.shape[0] != 2 * n:
            raise DimensionMismatch(f"column must be 2n x n, got {col.shape}")
        return cls(col[:n], col[n:])

    def times(self, u):
        """Right action x -> x u of an element of A."""
        return SphereVector(self.x1 @ u, self.x2 @ u)


@dataclass(frozen=True)
class TangentAtSphere:
    base: SphereVector
    xi1: np.ndarray
    xi2: np.ndarray

    @property
    def column(self):
        return np.vstack([self.xi1, self.xi2])

    @classmethod
    def from_column(cls, base, col):
        n = base.n
        return cls(base, np.asarray(col[:n], dtype=complex), np.asarray(col[n:], dtype=complex))


def e1(n):
    return SphereVector(np.eye(n), np.zeros((n, n)))


def _col(z):
    return z.column if hasattr(z, "column") else np.asarray(z, dtype=complex)


def inner(x, z):
    """A-valued inner product <x, z> = x1* z1 + x2* z2."""
    return _col(x).conj().T @ _col(z)


def module_norm(z):
    """C*-module norm ||<z, z>||^(1/2) of a 2n x n column."""
    z = np.asarray(z)
    return float(np.sqrt(op_norm(z.conj().T @ z)))


def in_sphere(x1, x2, tol=DEFAULTS.member):
    x1 = _as_square(x1, "x1")
    x2 = _as_square(x2, "x2")
    if x1.shape != x2.shape:
        raise DimensionMismatch(f"blocks differ in shape: {x1.shape} vs {x2.shape}")
    gram = x1.conj().T @ x1 + x2.conj().T @ x2
    return op_norm(gram - np.eye(x1.shape[0])) <= tol


def _require_sphere(x, tol=DEFAULTS.member):
    if not in_sphere(x.x1, x.x2, tol):
        raise NotInSphere("x1* x1 + x2* x2 differs from the identity")


def hopf(x, tol=DEFAULTS.member):
    _require_sphere(x, tol)
    col = x.column
    p = col @ col.conj().T
    return 0.5 * (p + p.conj().T)


def _left_polar(x1, tol):
    # x1 = r u with r > 0; singular top block has no chart
    w, s, vh = np.linalg.svd(x1)
    if s[-1] <= tol:
        raise TopBlockSingular(f"top block has smallest singular value {s[-1]:.3g}")
    r = (w * s) @ w.conj().T
    return 0.5 * (r + r.conj().T), w @ vh


def psi0(x, tol=DEFAULTS.chart):
    """Chart of K0: x -> (x2 x1^-1, u) with x1 = r u, r positive definite."""
    _, u = _left_polar(x.x1, tol)
    a = np.linalg.solve(x.x1.T, x.x2.T).T
    return a, u


def _inv_sqrt(m):
    lam, vecs = np.linalg.eigh(0.5 * (m + m.conj().T))
    out = (vecs / np.sqrt(lam)) @ vecs.conj().T
    return 0.5 * (out + out.conj().T)


def Psi0(a, u):
    a = _as_square(a, "a")
    u = _as_square(u, "u")
    if not is_unitary(u):
        raise NotUnitary("second argument of Psi0 must be unitary")
    c = _inv_sqrt(np.eye(a.shape[0]) + a.conj().T @ a)
    return SphereVector(c @ u, a @ c @ u)


def chart_coordinate(p, tol=DEFAULTS.chart):
    """a = p21 p11^-1, the affine coordinate of a projection with invertible p11."""
    p = np.asarray(p, dtype=complex)
    n = p.shape[0] // 2
    p11, p21 = p[:n, :n], p[n:, :n]
    lam_min = np.linalg.eigvalsh(0.5 * (p11 + p11.conj().T))[0]
    if lam_min <= tol * tol:
        raise NotInChart(f"p11 has smallest eigenvalue {lam_min:.3g}")
    return np.linalg.solve(p11.T, p21.T).T


def section_sigma(p, tol=DEFAULTS.chart):
    """Preimage of p under the Hopf map with positive definite top block."""
    a = chart_coordinate(p, tol)
    return Psi0(a, np.eye(a.shape[0]))


def unitary_completion(x, tol=DEFAULTS.chart):
    """Unitary of M_2n whose first block column is x, with the free unitary v = I."""
    a, u = psi0(x, tol)
    n = a.shape[0]
    c = _inv_sqrt(np.eye(n) + a.conj().T @ a)
    d = _inv_sqrt(np.eye(n) + a @ a.conj().T)
    top = np.hstack([c @ u, -a.conj().T @ d])
    bottom = np.hstack([a @ c @ u, d])
    return np.vstack([top, bottom])


def fiber_transfer(x, z, tol=DEFAULTS.member):
    """The unitary u of A with z = x u, when x and z lie over the same projection."""
    if op_norm(hopf(x) - hopf(z)) > tol * 10:
        raise NotSameFiber("the two sphere vectors project to different points")
    return inner(x, z)


def _check_tangent(x, xi, tol):
    w = inner(x, xi)
    if op_norm(w + w.conj().T) > tol * max(1.0, op_norm(w)):
        raise NotTangent("<x, xi> is not anti-Hermitian")
    return w


def tangent_split(x, xi, tol=DEFAULTS.member):
    """Split a tangent vector at x into vertical x<x, xi> and horizontal parts."""
    w = _check_tangent(x, xi, tol)
    w = 0.5 * (w - w.conj().T)
    vertical = x.column @ w
    horizontal = xi.column - vertical
    return TangentAtSphere.from_column(x, vertical), TangentAtSphere.from_column(x, horizontal)


def kappa(x, X, tol=DEFAULTS.member):
    """Structure morphism X -> X x from tangents at x x* to horizontal vectors at x."""
    X = X.full() if hasattr(X, "full") else np.asarray(X, dtype=complex)
    p = hopf(x)
    scale = max(1.0, op_norm(X))
    if not is_hermitian(X, tol):
        raise NotCodiagonal("tangent matrix is not Hermitian")
    if op_norm(X @ p - (np.eye(p.shape[0]) - p) @ X) > tol * scale:
        raise NotCodiagonal("tangent matrix is not codiagonal with respect to x x*")
    return TangentAtSphere.from_column(x, X @ x.column)
