import numpy as np
import pytest
from hypothesis import given, strategies as st

from riemann_sphere.errors import ParameterOutOfRange, TraceMismatch
from riemann_sphere.matfun import op_norm
from riemann_sphere.opgraph import (
    common_complement_witness,
    deformation_optimality_report,
    deformation_schedule,
    densify,
    densify_parameter,
    geodesic_exists_graphs,
    graph_perp_check,
    intersection_dims,
    minimal_geodesic_to_graph,
    proj_graph,
    proj_inv_graph,
    z_matrix,
)
from riemann_sphere.rsphere import base_projection, check_projection, phi0_inv
from riemann_sphere.sampling import random_matrix, random_projection

from oracles import graph_projection_direct, subspace_projector

seeds = st.integers(0, 2**32 - 1)
sizes = st.integers(1, 5)
HALF = 0.5 * np.ones((2, 2))


def test_proj_graph_examples():
    assert np.array_equal(proj_graph(np.zeros((2, 2))), base_projection(2))
    assert op_norm(proj_graph(np.ones((1, 1))) - HALF) < 1e-15


@given(seed=seeds, n=sizes, scale=st.floats(1e-3, 1e3))
def test_proj_graph_axioms_and_oracle(seed, n, scale):
    T = random_matrix(n, np.random.default_rng(seed), scale)
    p = proj_graph(T)
    check_projection(p, 1e-12)
    assert np.array_equal(p, phi0_inv(T))
    assert op_norm(p - graph_projection_direct(T)) < 1e-12 * max(1.0, scale)


def test_proj_inv_graph_examples():
    assert np.array_equal(proj_inv_graph(np.zeros((2, 2))), np.diag([0.0, 0, 1, 1]))
    assert op_norm(proj_inv_graph(np.ones((1, 1))) - proj_graph(np.ones((1, 1)))) < 1e-15


@given(seed=seeds, n=sizes)
def test_inverse_graph_image(seed, n):
    rng = np.random.default_rng(seed)
    T, x = random_matrix(n, rng), random_matrix(n, rng)
    col = np.vstack([T @ x, x])
    assert op_norm(proj_inv_graph(T) @ col - col) < 1e-12 * op_norm(col)


def test_graph_perp_examples():
    assert graph_perp_check(np.zeros((2, 2)))
    assert graph_perp_check(np.diag([2.0]))
    perp = np.eye(2) - proj_graph(np.diag([2.0]))
    v = np.array([[-2.0], [1.0]]) / np.sqrt(5)
    assert op_norm(perp - v @ v.T) < 1e-15


@given(seed=seeds, n=sizes)
def test_graph_perp_random(seed, n):
    assert graph_perp_check(random_matrix(n, np.random.default_rng(seed), 3.0), 1e-10)


def test_geodesic_existence_examples():
    r = geodesic_exists_graphs(np.eye(1), np.eye(1))
    assert (r.exists, r.unique, r.dimST, r.dimTS) == (True, True, 0, 0)
    r = geodesic_exists_graphs(np.eye(1), -np.eye(1))
    assert (r.exists, r.unique, r.dimST, r.dimTS) == (True, False, 1, 1)


@given(seed=seeds, n=sizes, k=st.integers(0, 5))
def test_finite_dimension_always_exists(seed, n, k):
    rng = np.random.default_rng(seed)
    S = random_matrix(n, rng)
    # build T with 1 + T* S singular on a k-dimensional subspace
    k = min(k, n)
    T = random_matrix(n, rng)
    if k:
        q, _ = np.linalg.qr(random_matrix(n, rng)[:, :k])
        Sq = S @ q
        # make T* S q = -q  by adjusting T on the range of S q
        Tstar = T.conj().T
        Tstar = Tstar - (Tstar @ Sq + q) @ np.linalg.pinv(Sq)
        T = Tstar.conj().T
    r = geodesic_exists_graphs(S, T)
    assert r.exists and r.dimST == r.dimTS
    assert r.dimTS >= k


def test_minimal_geodesic_examples():
    g = minimal_geodesic_to_graph(np.zeros((2, 2)))
    assert g.speed() == 0 and np.array_equal(g.at(0.7), base_projection(2))
    g = minimal_geodesic_to_graph(np.ones((1, 1)))
    assert abs(g.speed() - np.pi / 4) < 1e-15
    assert op_norm(g.at(1.0) - HALF) < 1e-15


@given(seed=seeds, n=sizes, log_norm=st.floats(-3.0, 3.0))
def test_graph_geodesic_endpoint(seed, n, log_norm):
    T = random_matrix(n, np.random.default_rng(seed))
    T *= 10.0**log_norm / op_norm(T)
    g = minimal_geodesic_to_graph(T)
    assert op_norm(g.at(0.0) - base_projection(n)) < 1e-15
    assert op_norm(g.at(1.0) - proj_graph(T)) < 1e-9
    assert abs(g.speed() - np.arctan(op_norm(T))) < 1e-10
    Z = z_matrix(T)
    assert op_norm(Z - Z.conj().T) < 1e-14
    assert abs(op_norm(Z) - np.arctan(op_norm(T))) < 1e-10


def test_schedule_examples():
    T = np.ones((1, 1))
    assert not deformation_schedule(T, 0.0).any()
    assert abs(deformation_schedule(T, 0.5)[0, 0] - np.tan(np.pi / 8)) < 1e-15
    assert abs(np.tan(np.pi / 8) - 0.41421356237309503) < 1e-16
    with pytest.raises(ParameterOutOfRange):
        deformation_schedule(T, 1.0)


@given(seed=seeds, n=sizes, log_norm=st.floats(-2.0, 3.0), t=st.floats(0.0, 0.999))
def test_schedule_traces_the_geodesic(seed, n, log_norm, t):
    T = random_matrix(n, np.random.default_rng(seed))
    T *= 10.0**log_norm / op_norm(T)
    A = deformation_schedule(T, t)
    g = minimal_geodesic_to_graph(T)
    assert op_norm(proj_graph(A) - g.at(t)) < 1e-9
    expected = np.tan(t * np.arctan(op_norm(T)))
    assert abs(op_norm(A) - expected) < 1e-9 * max(1.0, expected)


def test_schedule_norm_grows_monotonically():
    T = random_matrix(3, np.random.default_rng(1), 50.0)
    norms = [op_norm(deformation_schedule(T, t)) for t in np.linspace(0, 0.99, 30)]
    assert np.all(np.diff(norms) > 0)


def test_optimality_examples():
    r = deformation_optimality_report(np.zeros((2, 2)), 10)
    assert r.length == 0 and r.dist == 0
    r = deformation_optimality_report(np.ones((1, 1)), 1000, t0_grid=(0.0,))
    assert abs(r.dist - np.pi / 4) < 1e-14
    assert abs(r.length - np.pi / 4) < 1e-6


@given(seed=seeds, n=sizes)
def test_optimality_gap_small(seed, n):
    T = random_matrix(n, np.random.default_rng(seed), 3.0)
    r = deformation_optimality_report(T, 1000)
    assert r.maxGap < 1e-4
    assert r.length <= r.dist + 1e-12 or abs(r.length - r.dist) < 1e-12


def test_witness_examples():
    p = random_projection(2, np.random.default_rng(2))
    assert op_norm(common_complement_witness(p, p) - p) < 1e-10
    q = common_complement_witness(base_projection(1), np.diag([0.0, 1.0]))
    assert op_norm(q - HALF) < 1e-15
    assert abs(op_norm(q - base_projection(1)) - np.sqrt(0.5)) < 1e-15
    with pytest.raises(TraceMismatch):
        common_complement_witness(np.diag([1.0, 0.0]), np.eye(2))


@given(seed=seeds, n=sizes, k=st.integers(0, 5))
def test_witness_exists_in_finite_dimension(seed, n, k):
    rng = np.random.default_rng(seed)
    pS = random_projection(n, rng)
    pT = random_projection(n, rng)
    k = min(k, n)
    if k:
        # force a k-dimensional piece of ran pS into ker pT
        w = np.linalg.svd(pS)[0]
        pT = (np.eye(2 * n) - subspace_projector(w[:, :k])) @ pT @ (
            np.eye(2 * n) - subspace_projector(w[:, :k]))
        basis = np.linalg.svd(pT)[0][:, : n - k]
        extra = np.linalg.svd(np.eye(2 * n) - pS - subspace_projector(basis))[0]
        pT = subspace_projector(np.hstack([basis, extra[:, :k]]))
    d1, d2 = intersection_dims(pS, pT)
    assert d1 == d2
    Q = common_complement_witness(pS, pT)
    assert Q is not None
    assert op_norm(pS - Q) < 1 and op_norm(Q - pT) < 1


def test_densify_examples():
    p0 = base_projection(2)
    assert op_norm(densify(p0, 0.1) - p0) < 1e-15
    q = np.diag([0.0, 1.0])
    t0 = densify_parameter(q, 0.1)
    assert abs(t0 - (1 - 2 / np.pi * np.arcsin(0.1))) < 1e-6
    assert abs(t0 - 0.9362) < 1e-4
    q0 = densify(q, 0.1)
    assert op_norm(q0 - q) < 0.1 and op_norm(q0 - base_projection(1)) < 1


@given(seed=seeds, n=sizes, eps=st.floats(1e-3, 2.0))
def test_densify_bounds(seed, n, eps):
    q = random_projection(n, np.random.default_rng(seed))
    q0 = densify(q, eps)
    assert op_norm(q0 - q) < eps - 1e-12 or op_norm(q0 - q) < 1e-12
    assert op_norm(q0 - base_projection(n)) < 1 - 1e-12


@given(seed=seeds, n=sizes, eps=st.floats(1e-3, 0.5))
def test_densify_from_antipode(seed, n, eps):
    q = np.eye(2 * n) - base_projection(n)
    q0 = densify(q, eps)
    assert op_norm(q0 - q) < eps - 1e-12
    assert op_norm(q0 - base_projection(n)) < 1 - 1e-12
