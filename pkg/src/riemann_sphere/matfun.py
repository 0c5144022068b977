"""Dense complex matrix kernel.

Hermitian functional calculus through a full eigendecomposition, SVD-based
polar decomposition, operator norms, numerical rank and the principal
logarithm of a unitary.
"""

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .config import DEFAULTS
from .errors import (
    NotHermitian,
    NotUnitary,
    SpectrumOutOfDomain,
    SpectrumTouchesMinusOne,
)


def _sinc(x):
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < DEFAULTS.series_cutoff
    x2 = x * x
    series = 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = np.sin(x) / x
    return np.where(small, series, direct)


def _asinc(x):
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < DEFAULTS.series_cutoff
    x2 = x * x
    series = 1.0 + x2 / 6.0 + 3.0 * x2 * x2 / 40.0
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = np.arcsin(x) / x
    return np.where(small, series, direct)


def _check_interval(lam, lo, hi, name, slack):
    bad = (lam < lo - slack) | (lam > hi + slack)
    if np.any(bad):
        raise SpectrumOutOfDomain(
            f"eigenvalue {lam[bad][0]:.17g} outside [{lo}, {hi}] for {name}"
        )
    return np.clip(lam, lo, hi)


def _tan_guarded(lam, slack, pole):
    # distance of each eigenvalue to the nearest pi/2 + k*pi
    dist = np.abs((lam - np.pi / 2) - np.pi * np.round((lam - np.pi / 2) / np.pi))
    if np.any(dist < pole):
        bad = lam[dist < pole][0]
        raise SpectrumOutOfDomain(f"eigenvalue {bad:.17g} within {pole:g} of a pole of tan")
    return np.tan(lam)


def _sqrt(lam, slack, pole):
    if np.any(lam < -slack):
        raise SpectrumOutOfDomain(f"eigenvalue {lam[lam < -slack][0]:.17g} negative for sqrt")
    return np.sqrt(np.clip(lam, 0.0, None))


SCALAR_FUNCTIONS = {
    "cos": lambda lam, s, p: np.cos(lam),
    "sin": lambda lam, s, p: np.sin(lam),
    "sinc": lambda lam, s, p: _sinc(lam),
    "tan": _tan_guarded,
    "arcsin": lambda lam, s, p: np.arcsin(_check_interval(lam, -1.0, 1.0, "arcsin", s)),
    "asinc": lambda lam, s, p: _asinc(_check_interval(lam, -1.0, 1.0, "asinc", s)),
    "arctan": lambda lam, s, p: np.arctan(lam),
    "arccos": lambda lam, s, p: np.arccos(_check_interval(lam, -1.0, 1.0, "arccos", s)),
    "sqrt": _sqrt,
    "square": lambda lam, s, p: lam * lam,
    "exp_i": lambda lam, s, p: np.exp(1j * lam),
}


def is_hermitian(a, tol=DEFAULTS.member):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return np.linalg.norm(a - a.conj().T, 2) <= tol * max(1.0, np.linalg.norm(a, 2))


def hermitian_part(a):
    a = np.asarray(a, dtype=complex)
    return 0.5 * (a + a.conj().T)


def herm_fun(a, f, *, tol=DEFAULTS.member, domain_tol=DEFAULTS.domain, pole_guard=DEFAULTS.tan_pole):
    """Apply the scalar function named ``f`` to the Hermitian matrix ``a``.

    The result is ``U f(Lambda) U*`` from ``a = U Lambda U*``.  ``f`` is one of
    the keys of ``SCALAR_FUNCTIONS``.
    """
    if f not in SCALAR_FUNCTIONS:
        raise KeyError(f"unknown scalar function {f!r}")
    a = np.asarray(a, dtype=complex)
    if not is_hermitian(a, tol):
        raise NotHermitian(f"input to herm_fun({f}) is not Hermitian")
    lam, vecs = np.linalg.eigh(hermitian_part(a))
    vals = SCALAR_FUNCTIONS[f](lam, domain_tol, pole_guard)
    out = (vecs * vals) @ vecs.conj().T
    if f != "exp_i":
        out = hermitian_part(out)
    return out


@dataclass(frozen=True)
class PolarParts:
    isometry: np.ndarray
    modulus: np.ndarray


def polar(a, rank_tol=DEFAULTS.rank):
    """Right polar decomposition ``a = v |a|`` with the smallest partial isometry ``v``."""
    a = np.asarray(a, dtype=complex)
    u, s, vh = np.linalg.svd(a)
    k = min(a.shape)
    u, vh = u[:, :k], vh[:k, :]
    modulus = hermitian_part((vh.conj().T * s) @ vh)
    keep = s > rank_tol * max(1.0, s[0] if s.size else 0.0)
    iso = u[:, keep] @ vh[keep, :]
    return PolarParts(isometry=iso, modulus=modulus)


def polar_fun(a, f, *, domain_tol=DEFAULTS.domain, pole_guard=DEFAULTS.tan_pole):
    """v f(|a|) for a scalar function with f(0) = 0, read off the SVD a = U S W*.

    Equals U f(S) W*; no singular value is thresholded, so small components of
    a are kept exactly where the polar isometry would drop them.
    """
    if f not in SCALAR_FUNCTIONS:
        raise KeyError(f"unknown scalar function {f!r}")
    a = np.asarray(a, dtype=complex)
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    vals = SCALAR_FUNCTIONS[f](s, domain_tol, pole_guard)
    return (u * vals) @ vh


def op_norm(a):
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def rank_eps(a, tol=DEFAULTS.rank):
    a = np.asarray(a)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0])))


def is_unitary(u, tol=DEFAULTS.member):
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]), 2) <= tol


def principal_log_unitary(u, gap=1e-12, *, tol=DEFAULTS.member):
    """Anti-Hermitian ``L`` with ``exp(L) = u`` and spectrum of ``-iL`` inside ``(-pi, pi)``."""
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u, tol):
        raise NotUnitary("principal_log_unitary needs a unitary input")
    # complex Schur form of a normal matrix is diagonal up to round-off
    t, z = linalg.schur(u, output="complex")
    theta = np.angle(np.diag(t))
    if np.any(np.abs(theta) > np.pi - gap):
        worst = theta[np.argmax(np.abs(theta))]
        raise SpectrumTouchesMinusOne(f"eigenvalue angle {worst:.17g} within {gap:g} of pi")
    log = (z * (1j * theta)) @ z.conj().T
    return 0.5 * (log - log.conj().T)


def expm(a):
    return linalg.expm(np.asarray(a, dtype=complex))


def null_space(a, tol=DEFAULTS.rank):
    """Orthonormal basis (columns) of ker(a) using the shared rank threshold."""
    a = np.asarray(a, dtype=complex)
    r = rank_eps(a, tol)
    _, _, vh = np.linalg.svd(a)
    return vh[r:, :].conj().T


def range_basis(a, tol=DEFAULTS.rank):
    a = np.asarray(a, dtype=complex)
    r = rank_eps(a, tol)
    u, _, _ = np.linalg.svd(a)
    return u[:, :r]
