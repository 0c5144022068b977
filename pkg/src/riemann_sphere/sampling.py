"""Random test inputs: unitaries, tangents, projections inside and outside the chart."""

import numpy as np
from scipy.stats import unitary_group

from .rsphere import TangentVector, geodesic_eval


def random_matrix(n, rng, scale=1.0):
    return scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)


def random_unitary(n, rng):
    if n == 1:
        return np.exp(2j * np.pi * rng.uniform()) * np.ones((1, 1))
    return unitary_group.rvs(n, random_state=rng)


def random_tangent(n, rng, norm):
    """Tangent vector at p0 with prescribed operator norm."""
    a = random_matrix(n, rng)
    return TangentVector(a * (norm / np.linalg.norm(a, 2)))


def tangent_with_angles(theta, rng):
    """Tangent a = U diag(theta) W* with random unitaries U, W."""
    theta = np.asarray(theta, dtype=float)
    n = len(theta)
    U, W = random_unitary(n, rng), random_unitary(n, rng)
    return TangentVector((U * theta) @ W.conj().T)


def projection_with_angles(theta, rng):
    """Projection whose principal angles to p0 are ``theta``."""
    return geodesic_eval(tangent_with_angles(theta, rng), 1.0)


def random_projection(n, rng):
    """Projection of rank n in M_2n drawn from the unitarily invariant law."""
    u = random_unitary(2 * n, rng)
    return u[:, :n] @ u[:, :n].conj().T


def random_log_domain_projection(n, rng, margin=1e-3):
    """Projection with min eig(p11) > 1/2 + margin, i.e. all angles below pi/4."""
    top = np.arccos(np.sqrt(0.5 + margin))
    return projection_with_angles(rng.uniform(0.0, top, n), rng)


def mixed_chart_projection(n, rng):
    """Projection inside the principal chart or, half the time, exactly on its boundary."""
    theta = rng.uniform(0.0, np.pi / 2, n)
    if rng.uniform() < 0.5:
        k = rng.integers(1, n + 1)
        theta[rng.choice(n, size=k, replace=False)] = np.pi / 2
    return projection_with_angles(theta, rng)


def index_zero_matrix(n, k, rng):
    """Square n x n matrix with kernel of dimension exactly k."""
    U, W = random_unitary(n, rng), random_unitary(n, rng)
    s = np.concatenate([np.zeros(k), rng.uniform(0.5, 2.0, n - k)])
    return (U * s) @ W.conj().T
