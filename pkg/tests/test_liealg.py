"""Matrix-model layer: bases, Killing forms, validated reductive packages.

Killing-form oracles are the closed trace forms, computed here from first
principles and compared against the library's ad-trace computation.
"""
import dataclasses

import numpy as np
import pytest

from isofib.liealg import (
    BlockFactor,
    MatrixAlgebra,
    _build_su,
    _validate_model,
    algebra_so,
    algebra_su,
    build_model,
    bracket,
    circle_generator,
    complexify,
    find_record,
    killing_form,
    matrix_exp,
    natural_reductivity_check,
    realify,
    so_basis,
    su_basis_complex,
)


@pytest.fixture(scope="module")
def su3_model():
    return build_model(find_record("su3-hopf"))


@pytest.fixture(scope="module")
def so6_model():
    return build_model(find_record("so6-stiefel"))


# --- realification and bases ---------------------------------------------------


def test_realify_roundtrip():
    rng = np.random.default_rng(0)
    Z = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    assert np.allclose(complexify(realify(Z)), Z)


def test_realify_is_an_algebra_map():
    rng = np.random.default_rng(1)
    Z = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    W = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    assert np.allclose(realify(Z @ W), realify(Z) @ realify(W))


def test_realified_unitary_is_orthogonal():
    rng = np.random.default_rng(2)
    Z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    Q, _ = np.linalg.qr(Z)
    R = realify(Q)
    assert np.allclose(R @ R.T, np.eye(8), atol=1e-12)


def test_basis_dimensions():
    assert len(su_basis_complex(3)) == 8
    assert len(su_basis_complex(4)) == 15
    assert len(so_basis(6)) == 15
    assert algebra_su(3).dim == 8
    assert algebra_so(6).dim == 15


def test_su_basis_traceless_antihermitian():
    for Z in su_basis_complex(3):
        assert abs(np.trace(Z)) < 1e-14
        assert np.allclose(Z.conj().T, -Z)


# --- Killing form oracles --------------------------------------------------------


def test_killing_su2_diagonal_generator():
    # kappa(X, X) = 4 tr_C(X^2) for su(2); X = diag(i, -i) gives 4 * (-2) = -8
    a = algebra_su(2)
    X = realify(np.diag([1j, -1j]))
    assert killing_form(a, X, X) == pytest.approx(-8.0, abs=1e-9)


def test_killing_su3_closed_form():
    # kappa = 2m tr_C = m tr_R on the realification, m = 3
    a = algebra_su(3)
    rng = np.random.default_rng(3)
    for _ in range(5):
        X = a.from_coords(rng.normal(size=a.dim))
        Y = a.from_coords(rng.normal(size=a.dim))
        assert killing_form(a, X, Y) == pytest.approx(
            3.0 * np.trace(X @ Y), rel=1e-10, abs=1e-8
        )


def test_killing_so6_closed_form():
    # kappa = (n - 2) tr, n = 6
    a = algebra_so(6)
    rng = np.random.default_rng(4)
    for _ in range(5):
        X = a.from_coords(rng.normal(size=a.dim))
        Y = a.from_coords(rng.normal(size=a.dim))
        assert killing_form(a, X, Y) == pytest.approx(
            4.0 * np.trace(X @ Y), rel=1e-10, abs=1e-8
        )


def test_killing_so4_cross_ideal_vanishes():
    # so(4) splits into two commuting ideals; kappa pairs them to zero
    a = algebra_so(4)

    def rot(i, j):
        M = np.zeros((4, 4))
        M[i, j], M[j, i] = 1.0, -1.0
        return M

    plus = rot(0, 1) + rot(2, 3)
    minus = rot(0, 1) - rot(2, 3)
    assert abs(killing_form(a, plus, minus)) < 1e-10


def test_killing_ad_invariance():
    a = algebra_su(3)
    rng = np.random.default_rng(5)
    X, Y, Z = (a.from_coords(rng.normal(size=a.dim)) for _ in range(3))
    lhs = killing_form(a, bracket(X, Y), Z)
    rhs = -killing_form(a, Y, bracket(X, Z))
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-8)


def test_killing_rejects_outsiders():
    a = algebra_su(2)
    with pytest.raises(ValueError, match="outside"):
        killing_form(a, np.eye(4), np.eye(4))


# --- circle generator -------------------------------------------------------------


def test_circle_generator_structure():
    z = circle_generator(3, 1)
    zc = complexify(z)
    assert np.allclose(zc, 1j * np.diag([2.0, -1.0, -1.0]))
    assert abs(np.trace(zc)) < 1e-14


def test_circle_generator_period():
    z = circle_generator(3, 1)
    assert np.allclose(matrix_exp(2 * np.pi * z), np.eye(6), atol=1e-10)
    assert not np.allclose(matrix_exp(np.pi * z), np.eye(6), atol=1e-3)


def test_matrix_exp_orthogonal_on_skew():
    rng = np.random.default_rng(6)
    A = rng.normal(size=(5, 5))
    S = A - A.T
    E = matrix_exp(S)
    assert np.allclose(E @ E.T, np.eye(5), atol=1e-12)


# --- validated models --------------------------------------------------------------


def test_su3_model_dimensions(su3_model):
    m = su3_model
    assert (m.dim_g, m.dim_k1, m.dim_k2, m.dim_m1, m.dim_m) == (8, 3, 1, 5, 4)
    assert m.n == 6 and m.complex_size == 3
    assert m.k1_factors == (BlockFactor("su", (1, 2)),)
    assert len(m.k2_factors) == 1 and m.k2_factors[0].kind == "circle"
    assert m.k2_factors[0].period == pytest.approx(2 * np.pi)


def test_so6_model_dimensions(so6_model):
    m = so6_model
    assert (m.dim_g, m.dim_k1, m.dim_k2, m.dim_m1, m.dim_m) == (15, 3, 3, 12, 9)
    assert m.n == 6 and m.complex_size == 0
    assert m.k1_factors == (BlockFactor("so", (0, 1, 2)),)
    assert m.k2_factors == (BlockFactor("so", (3, 4, 5)),)


def test_m1_basis_orthonormal(su3_model, so6_model):
    for m in (su3_model, so6_model):
        d = m.dim_m1
        G = np.array(
            [[m.kappa_ip(m.m1_basis[i], m.m1_basis[j]) for j in range(d)] for i in range(d)]
        )
        assert np.allclose(G, np.eye(d), atol=1e-9)


def test_m1_leads_with_k2_directions(su3_model):
    # the first m1 basis vector spans the circle direction
    z = su3_model.circle_mat
    e0 = su3_model.m1_basis[0]
    ip = su3_model.kappa_ip(e0, z)
    assert abs(abs(ip) - su3_model.m1_norm(z)) < 1e-8


def test_z_norm_is_six(su3_model):
    assert su3_model.m1_norm(su3_model.circle_mat) == pytest.approx(6.0, abs=1e-9)


def test_projection_idempotent(su3_model):
    rng = np.random.default_rng(7)
    X = su3_model.g.from_coords(rng.normal(size=8))
    P = su3_model.project_m1(X)
    assert np.allclose(su3_model.project_m1(P), P, atol=1e-10)


def test_natural_reductivity(su3_model, so6_model):
    assert natural_reductivity_check(su3_model) < 1e-9
    assert natural_reductivity_check(so6_model) < 1e-9


def test_su3_center_is_fiber_circle_sample(su3_model):
    # the nontrivial center elements sit on the circle subgroup
    z = su3_model.circle_mat
    omega = su3_model.center_elements[1]
    assert np.allclose(omega, matrix_exp(-2 * np.pi / 3 * z), atol=1e-10)


def test_so6_center(so6_model):
    assert len(so6_model.center_elements) == 2
    assert np.allclose(so6_model.center_elements[1], -np.eye(6))


def test_model_build_deterministic():
    a = build_model(find_record("su3-hopf"))
    b = build_model(find_record("su3-hopf"))
    assert np.allclose(a.m1_basis, b.m1_basis, atol=0)
    assert np.allclose(a.m_basis, b.m_basis, atol=0)


def test_validation_catches_noncommuting_factors(su3_model):
    broken = dataclasses.replace(su3_model, k2=su3_model.k1)
    with pytest.raises(ValueError, match="commute|orthogonal|centralizer"):
        _validate_model(broken)


# --- build errors -------------------------------------------------------------------


def test_catalog_only_record_rejected():
    rec = find_record("e8-a4a4--k1-0a4")
    with pytest.raises(ValueError, match="no concrete model"):
        build_model(rec)


def test_degenerate_splitting_rejected():
    with pytest.raises(ValueError, match="degenerate splitting"):
        _build_su(1, 2, ("b2", "z"), None)
    with pytest.raises(ValueError, match="degenerate splitting"):
        _build_su(2, 2, (), None)


def test_find_record_aliases():
    assert find_record("su3-hopf").slug == "su3-su1u2--k1-0a1"
    assert find_record("so6-stiefel").slug == "so6-so3so3--k1-0so3"
    with pytest.raises(LookupError):
        find_record("no-such-case")


def test_algebra_rejects_dependent_basis():
    b = np.zeros((2, 2, 2))
    b[0, 0, 1], b[0, 1, 0] = 1.0, -1.0
    b[1] = 2 * b[0]
    with pytest.raises(ValueError, match="independent"):
        MatrixAlgebra(name="bad", n=2, basis=b)
