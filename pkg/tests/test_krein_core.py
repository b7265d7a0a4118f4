import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from krein_csym.exceptions import DimensionMismatch, KreinStructureError, RankDeficient
from krein_csym.krein_core import (KreinStructure, SubspaceBasis, classify_subspace,
                                   indefinite_inner, j_adjoint, j_orthogonal_complement,
                                   krein_projector, oblique_projector, principal_angles,
                                   same_subspace)
from krein_csym.testing import random_fundamental_symmetry, random_parity_symmetry

J2 = KreinStructure(np.diag([1.0, -1.0]))
PARITY2 = KreinStructure(np.array([[0.0, 1.0], [1.0, 0.0]]))


def test_structure_projectors():
    ks = random_fundamental_symmetry(7, 3, rng=1)
    eye = np.eye(7)
    assert np.linalg.norm(ks.J - ks.J.conj().T, 2) <= 1e-10
    assert np.linalg.norm(ks.J @ ks.J - eye, 2) <= 1e-10
    assert np.linalg.norm(ks.P_plus @ ks.P_minus, 2) <= 1e-10
    assert np.allclose(ks.P_plus + ks.P_minus, eye)
    assert (ks.n_plus, ks.n_minus) == (3, 4)


def test_structure_is_read_only():
    with pytest.raises(ValueError):
        J2.J[0, 0] = 5.0


@pytest.mark.parametrize("j", [
    np.diag([1.0, 1.0]),                      # one eigenspace empty
    np.array([[1.0, 1.0], [0.0, -1.0]]),      # not Hermitian
    np.diag([2.0, -1.0]),                     # not an involution
])
def test_structure_rejects(j):
    with pytest.raises(KreinStructureError):
        KreinStructure(j)


def test_canonical_basis_diagonalises_j():
    ks = random_fundamental_symmetry(6, 2, rng=3)
    e = ks.canonical_basis()
    assert np.allclose(e.conj().T @ e, np.eye(6))
    assert np.allclose(e.conj().T @ ks.J @ e, np.diag([1, 1, -1, -1, -1, -1]))


@pytest.mark.parametrize("x, y, expected", [
    ((1, 0), (1, 0), 1),
    ((1, 1), (1, 1), 0),
    ((1, 1), (1, -1), 2),
])
def test_indefinite_inner_examples(x, y, expected):
    assert indefinite_inner(J2, np.array(x), np.array(y)) == pytest.approx(expected)


def test_indefinite_inner_shape():
    with pytest.raises(DimensionMismatch):
        indefinite_inner(J2, np.ones(3), np.ones(2))


@given(st.integers(0, 10_000))
def test_indefinite_inner_conjugate_symmetric(seed):
    rng = np.random.default_rng(seed)
    ks = random_fundamental_symmetry(5, rng=rng)
    x = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    y = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    a, b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    scale = np.linalg.norm(x) * np.linalg.norm(y)
    assert abs(indefinite_inner(ks, x, y) - np.conj(indefinite_inner(ks, y, x))) <= 1e-12 * scale
    lhs = indefinite_inner(ks, a * x + b * y, y)
    rhs = a * indefinite_inner(ks, x, y) + b * indefinite_inner(ks, y, y)
    assert abs(lhs - rhs) <= 1e-12 * (abs(a) + abs(b)) * (np.linalg.norm(x) + np.linalg.norm(y)) ** 2


def test_classify_examples():
    assert classify_subspace(J2, np.array([1.0, 0.0])).tag == "positive"
    assert classify_subspace(J2, np.array([1.0, 1.0])).tag == "neutral"
    assert classify_subspace(J2, np.array([0.0, 3.0])).tag == "negative"
    assert classify_subspace(J2, np.eye(2)).tag == "indefinite"


def test_classify_parity_grid():
    # Gram oracle for J = [[0,1],[1,0]]: [x, x] = 2 Re(conj(x0) x1)
    c = classify_subspace(PARITY2, np.array([1.0, 0.5]))
    assert c.tag == "positive" and c.margin == pytest.approx(1.0)
    # (1, i/2) has 2 Re(i/2) = 0: a neutral vector
    c = classify_subspace(PARITY2, np.array([1.0, 0.5j]))
    assert c.tag == "neutral" and c.margin == pytest.approx(0.0, abs=1e-15)


def test_classify_fundamental_subspaces():
    ks = random_fundamental_symmetry(8, 3, rng=5)
    plus = classify_subspace(ks, ks.basis_plus)
    minus = classify_subspace(ks, ks.basis_minus)
    assert plus.tag == "positive" and plus.margin == pytest.approx(1.0)
    assert minus.tag == "negative" and minus.margin == pytest.approx(1.0)


def test_classify_scale_invariant():
    b = np.array([[1.0], [0.3]])
    assert classify_subspace(J2, 1e-6 * b).tag == classify_subspace(J2, 1e6 * b).tag == "positive"


def test_rank_deficient_basis():
    with pytest.raises(RankDeficient):
        SubspaceBasis(np.array([[1.0, 2.0], [1.0, 2.0]]))


def test_j_adjoint_examples():
    assert np.allclose(j_adjoint(J2, np.eye(2)), np.eye(2))
    assert np.allclose(j_adjoint(J2, J2.J), J2.J)
    a = np.array([[2.0, 1.0], [-1.0, -1.0]])
    assert np.allclose(j_adjoint(J2, a), a)


def test_j_adjoint_involution(rng):
    ks = random_fundamental_symmetry(6, rng=rng)
    a = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    assert np.linalg.norm(j_adjoint(ks, j_adjoint(ks, a)) - a, 2) <= 1e-10 * np.linalg.norm(a, 2)


def test_j_adjoint_shape():
    with pytest.raises(DimensionMismatch):
        j_adjoint(J2, np.eye(3))


def test_complement_examples():
    ks = random_fundamental_symmetry(6, 2, rng=7)
    assert same_subspace(j_orthogonal_complement(ks, ks.basis_plus), ks.basis_minus)
    t = 0.4 - 0.3j
    comp = j_orthogonal_complement(J2, np.array([1.0, t]))
    assert same_subspace(comp, np.array([np.conj(t), 1.0]))


def test_complement_of_complement(rng):
    ks = random_fundamental_symmetry(7, 3, rng=rng)
    b = rng.standard_normal((7, 3)) + 1j * rng.standard_normal((7, 3))
    comp = j_orthogonal_complement(ks, b)
    assert comp.dim == 4
    assert np.linalg.norm(b.conj().T @ ks.J @ comp.columns) <= 1e-12 * np.linalg.norm(b)
    assert same_subspace(j_orthogonal_complement(ks, comp), b)


def test_principal_angles_orthogonal():
    ang = principal_angles(np.array([1.0, 0.0]), np.array([0.0, 1.0]))
    assert ang[0] == pytest.approx(np.pi / 2)


def test_krein_projector_matches_oblique_projector(rng):
    ks = random_fundamental_symmetry(6, 3, rng=rng)
    # a positive subspace: graph of a small contraction over H+
    k = 0.3 * (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))) / 3
    b = ks.basis_plus + ks.basis_minus @ k
    p = krein_projector(ks, b)
    oracle = oblique_projector(b, j_orthogonal_complement(ks, b))
    assert np.allclose(p, oracle, atol=1e-12)
    assert np.allclose(p @ p, p, atol=1e-12)


@given(st.integers(0, 10_000), st.integers(2, 12))
def test_random_parity_symmetry(seed, n):
    ks = random_parity_symmetry(n, seed)
    assert not np.allclose(ks.J, np.diag(np.diag(ks.J)))
    assert set(np.unique(ks.J)) <= {-1.0, 0.0, 1.0}
    assert ks.n_plus >= 1 and ks.n_minus >= 1
