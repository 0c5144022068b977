import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from riemann_sphere.errors import IndexNonZero, KernelMismatch, ParameterOutOfRange
from riemann_sphere.matfun import op_norm
from riemann_sphere.opgraph import proj_graph, proj_inv_graph, subspace_gap
from riemann_sphere.rsphere import base_projection, finsler_dist
from riemann_sphere.sampling import index_zero_matrix, random_unitary
from riemann_sphere.spectral_lab import (
    FourierTruncation,
    angles,
    anti_hermitian_basis,
    assemble_graph_projection,
    build_diff_op,
    conjugate_index,
    conjugate_index_report,
    deformation_T,
    diff_geodesic,
    diff_graph_blocks,
    jacobi_field,
    kernel_bases,
    multi_geodesics,
    norm_growth,
    z0_generator,
)

seeds = st.integers(0, 2**32 - 1)
TWO_PI = 2 * np.pi
# frozen from a 40-digit mpmath evaluation
D1_AT_1 = 0.024704523031857640  # 1 / (1 + 4 pi^2)
D2_AT_1 = 0.15522309613464762  # 2 pi / (1 + 4 pi^2)
A_1 = 1.4129651365067378  # arctan(2 pi)
T_HALF_1 = 0.85343100185825281  # tan(arctan(2 pi) / 2)
GAP_64 = 0.0024837039134537978  # 1 - tan(arctan(128 pi) / 2)


def test_frozen_scalars():
    assert abs(D1_AT_1 - 1 / (1 + TWO_PI**2)) < 1e-17
    assert abs(D2_AT_1 - TWO_PI / (1 + TWO_PI**2)) < 1e-16
    assert abs(A_1 - np.arccos(1 / np.sqrt(1 + TWO_PI**2))) < 1e-15
    assert abs(T_HALF_1 - np.tan(0.5 * np.arctan(TWO_PI))) < 1e-15
    assert abs(GAP_64 - (1 - np.tan(0.5 * np.arctan(128 * np.pi)))) < 1e-15


def test_truncation_layout():
    tr = FourierTruncation(3)
    assert list(tr.indices) == [-3, -2, -1, 0, 1, 2, 3]
    assert tr.dim == 7 and tr.indices[tr.N] == 0
    with pytest.raises(ParameterOutOfRange):
        FourierTruncation(0)


def test_build_diff_op():
    d = build_diff_op(FourierTruncation(1))
    assert np.allclose(d, np.diag([-TWO_PI, 0.0, TWO_PI]))
    assert np.array_equal(d, d.conj().T)
    tr = FourierTruncation(5)
    assert np.allclose(np.diag(build_diff_op(tr)), TWO_PI * tr.indices)


def test_graph_blocks_at_first_mode():
    b = diff_graph_blocks(FourierTruncation(1))
    k = list(b.modes).index(1)
    assert abs(b.D1[k, k] - D1_AT_1) < 1e-16
    assert abs(b.D2[k, k] - D2_AT_1) < 1e-16
    assert abs(b.D3[k, k] - (1 - D1_AT_1)) < 1e-15
    assert np.allclose(b.D1 + b.D3, np.eye(2))


@pytest.mark.parametrize("N", [1, 8, 32, 128])
def test_assembled_projection_matches_graph(N):
    tr = FourierTruncation(N)
    assert op_norm(assemble_graph_projection(tr) - proj_graph(build_diff_op(tr))) < 1e-12


def test_angles():
    tr = FourierTruncation(6)
    a = angles(tr)
    assert abs(a[tr.N + 1] - A_1) < 1e-15
    assert np.allclose(a, a[::-1])
    nz = a[tr.indices != 0]
    assert np.all(nz >= A_1 - 1e-15) and np.all(nz < np.pi / 2)
    assert np.all(np.abs(nz - np.arccos(1 / np.sqrt(1 + (TWO_PI * tr.indices[tr.indices != 0]) ** 2))) < 1e-14)


@pytest.mark.parametrize("N", [1, 3, 8])
def test_z0_conjugation_reproduces_graph(N):
    tr = FourierTruncation(N)
    Z = z0_generator(tr)
    assert op_norm(Z - Z.conj().T) < 1e-15
    e = expm(1j * Z)
    p0 = base_projection(tr.dim)
    assert op_norm(e @ p0 @ e.conj().T - assemble_graph_projection(tr)) < 1e-10
    # the constant mode is untouched
    assert not Z[tr.N].any() and not Z[tr.dim + tr.N].any()
    assert op_norm(1j * Z - diff_geodesic(tr).tilde()) < 1e-15


def test_deformation_T_examples():
    tr = FourierTruncation(1)
    assert not deformation_T(tr, 0.0).any()
    d = np.diag(deformation_T(tr, 0.5)).real
    assert np.allclose(d, [-T_HALF_1, 0.0, T_HALF_1], atol=1e-15)
    with pytest.raises(ParameterOutOfRange):
        deformation_T(tr, 1.0)


@pytest.mark.parametrize("N", [8, 32, 128])
def test_geodesic_images_are_graphs(N):
    tr = FourierTruncation(N)
    g = diff_geodesic(tr)
    for t in np.arange(1, 10) / 10:
        assert subspace_gap(g.at(t), proj_graph(deformation_T(tr, t))) < 1e-9
    assert abs(g.speed() - np.arctan(TWO_PI * N)) < 1e-12


def test_distance_to_graph_tends_to_quarter_turn():
    dists = []
    for N in (8, 32, 128):
        tr = FourierTruncation(N)
        d = finsler_dist(base_projection(tr.dim), assemble_graph_projection(tr))
        assert abs(d - np.arctan(TWO_PI * N)) < 1e-9
        dists.append(d)
    assert dists[0] < dists[1] < dists[2] < np.pi / 2


def test_norm_growth_examples():
    r = norm_growth(FourierTruncation(4), 0.0)
    assert (r.truncatedNorm, r.analyticLimit) == (0.0, 0.0)
    r = norm_growth(FourierTruncation(64), 0.5)
    assert abs(r.analyticLimit - 1.0) < 1e-15
    assert abs(r.truncatedNorm - np.tan(0.5 * np.arctan(128 * np.pi))) < 1e-15
    # the relative gap is 0.00248, just above the 0.002 one might expect
    assert abs((r.analyticLimit - r.truncatedNorm) - GAP_64) < 1e-14
    assert (r.analyticLimit - r.truncatedNorm) / r.analyticLimit < 0.0025


@given(t=st.floats(0.01, 0.9))
def test_norm_growth_monotone_in_N(t):
    Ns = [4 * 2**j for j in range(6)]
    vals = [norm_growth(FourierTruncation(N), t) for N in Ns]
    norms = [v.truncatedNorm for v in vals]
    assert np.all(np.diff(norms) > 0)
    assert all(v.truncatedNorm < v.analyticLimit for v in vals)
    assert (vals[-1].analyticLimit - vals[-1].truncatedNorm) / vals[-1].analyticLimit < 0.01


@pytest.mark.parametrize("N", [8, 32])
def test_truncated_norm_is_operator_norm(N):
    tr = FourierTruncation(N)
    for t in (0.1, 0.5, 0.9):
        assert abs(op_norm(deformation_T(tr, t)) - norm_growth(tr, t).truncatedNorm) < 1e-12


# multi-geodesics -------------------------------------------------------------

def _h_prime_blocks(F, g, t):
    K1, K2 = kernel_bases(F)
    n = F.shape[0]
    E = np.hstack([np.vstack([K1, np.zeros_like(K1)]), np.vstack([np.zeros_like(K2), K2])])
    return E.conj().T @ g.at(t) @ E


def test_multi_geodesic_midpoint_block():
    F = np.diag([0.0, 1.0])
    for theta in (0.0, 0.7):
        u = np.exp(1j * theta) * np.eye(1)
        blk = _h_prime_blocks(F, multi_geodesics(F, u), 0.5)
        expected = 0.5 * np.block([[np.eye(1), u], [u.conj().T, np.eye(1)]])
        assert op_norm(blk - expected) < 1e-14


def test_multi_geodesic_family_shares_endpoints():
    F = np.diag([0.0, 1.0])
    g1 = multi_geodesics(F, np.eye(1))
    g2 = multi_geodesics(F, np.exp(0.9j) * np.eye(1))
    assert op_norm(g1.at(0) - g2.at(0)) < 1e-15
    assert op_norm(g1.at(1) - g2.at(1)) < 1e-14
    assert op_norm(g1.at(0.5) - g2.at(0.5)) > 0.1


@given(seed=seeds, n=st.integers(2, 6), k=st.integers(1, 3))
def test_multi_geodesics_join_base_to_inverse_graph(seed, n, k):
    rng = np.random.default_rng(seed)
    k = min(k, n)
    F = index_zero_matrix(n, k, rng)
    u = random_unitary(k, rng)
    g = multi_geodesics(F, u)
    assert op_norm(g.at(0.0) - base_projection(n)) < 1e-14
    assert op_norm(g.at(1.0) - proj_inv_graph(F)) < 1e-9
    assert abs(g.speed() - np.pi / 2) < 1e-12


def test_multi_geodesics_errors():
    with pytest.raises(KernelMismatch):
        multi_geodesics(np.eye(2), np.eye(1))
    with pytest.raises(KernelMismatch):
        multi_geodesics(np.diag([0.0, 1.0]), np.eye(2))


def test_jacobi_examples():
    F = np.diag([0.0, 1.0])
    i = 1j * np.eye(1)
    assert op_norm(jacobi_field(F, i, 0.0)) == 0.0
    assert op_norm(jacobi_field(F, i, 1.0)) < 1e-16
    assert abs(op_norm(jacobi_field(F, i, 0.5)) - 0.5) < 1e-15


@given(seed=seeds, n=st.integers(2, 5), k=st.integers(1, 3), t=st.floats(0.0, 1.0))
@settings(max_examples=25)
def test_jacobi_field_is_variation_of_family(seed, n, k, t):
    rng = np.random.default_rng(seed)
    k = min(k, n)
    F = index_zero_matrix(n, k, rng)
    u = random_unitary(k, rng)
    basis = anti_hermitian_basis(k)
    udot = sum(rng.standard_normal() * e for e in basis)
    h = 1e-5
    fd = (multi_geodesics(F, u @ expm(h * udot)).at(t)
          - multi_geodesics(F, u @ expm(-h * udot)).at(t)) / (2 * h)
    J = jacobi_field(F, udot, t, u=u)
    assert op_norm(J - J.conj().T) < 1e-15
    assert op_norm(fd - J) < 1e-8 * max(1.0, op_norm(udot))


def test_conjugate_index_examples():
    assert conjugate_index(np.eye(3)) == 0
    assert conjugate_index(np.diag([0.0, 1.0])) == 1
    assert conjugate_index(np.diag([0.0, 0.0, 1.0])) == 4
    with pytest.raises(IndexNonZero):
        conjugate_index(np.zeros((2, 3)))


@given(seed=seeds, n=st.integers(3, 7), k=st.integers(1, 3))
def test_conjugate_index_is_k_squared(seed, n, k):
    rng = np.random.default_rng(seed)
    rep = conjugate_index_report(index_zero_matrix(n, k, rng))
    assert rep.kernel_dim == k and rep.index == k * k
    assert rep.gram_min_eig > 1e-12


def test_anti_hermitian_basis_spans():
    for k in (1, 2, 3):
        basis = anti_hermitian_basis(k)
        assert len(basis) == k * k
        for e in basis:
            assert op_norm(e + e.conj().T) == 0.0
        V = np.array([np.concatenate([e.real.ravel(), e.imag.ravel()]) for e in basis])
        assert np.linalg.matrix_rank(V) == k * k
