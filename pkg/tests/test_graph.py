import numpy as np
import pytest

from gcalc import graph
from gcalc.errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotPositiveDefinite,
    NotPure,
    NotSymmetric,
    SingularMatrix,
    UnknownLabel,
)
from gcalc.graph import GaussianGraph
from gcalc.linalg import symplectic_form
from randomstates import random_graph

X = np.array([[0.0, 1.0], [1.0, 0.0]])


def test_from_parts_examples():
    g = graph.from_parts(np.zeros((2, 2)), np.eye(2))
    np.testing.assert_array_equal(g.z, 1j * np.eye(2))
    r = 0.7
    g = graph.from_parts(X, np.exp(-2 * r) * np.eye(2))
    np.testing.assert_allclose(g.z, [[1j * np.exp(-2 * r), 1], [1, 1j * np.exp(-2 * r)]])
    with pytest.raises(NotPositiveDefinite):
        graph.from_parts(np.zeros((2, 2)), np.diag([1.0, 0.0]))
    with pytest.raises(DimensionMismatch):
        graph.from_parts(np.zeros((2, 2)), np.eye(3))
    with pytest.raises(NotSymmetric):
        graph.from_parts([[0, 1], [2, 0]], np.eye(2))


def test_graph_validation():
    with pytest.raises(NotSymmetric):
        GaussianGraph([[1j, 1], [0, 1j]])
    with pytest.raises(NotPositiveDefinite):
        GaussianGraph([[1j, 0], [0, -1j]])
    with pytest.raises(ValueError):
        GaussianGraph(1j * np.eye(2), labels=["a", "a"])
    with pytest.raises(DimensionMismatch):
        GaussianGraph(1j * np.eye(2), labels=["a"])


def test_labels_and_index():
    g = graph.vacuum(3, labels=["a", "b", "c"])
    assert g.labels == ("a", "b", "c")
    assert g.index("b") == 1
    assert g.index(2) == 2
    with pytest.raises(UnknownLabel):
        g.index("z")
    with pytest.raises(IndexOutOfRange):
        g.index(3)
    assert graph.vacuum(2).labels == ("0", "1")


def test_graph_is_immutable():
    g = graph.vacuum(2)
    with pytest.raises(ValueError):
        g.z[0, 0] = 5


def test_vacuum_examples():
    np.testing.assert_array_equal(graph.vacuum(1).z, [[1j]])
    np.testing.assert_array_equal(graph.vacuum(3).z, 1j * np.eye(3))
    np.testing.assert_array_equal(graph.to_covariance(graph.vacuum(2)).sigma, 0.5 * np.eye(4))


def test_to_covariance_two_mode_cluster():
    g = GaussianGraph([[1j, 1], [1, 1j]])
    expected = 0.5 * np.array([[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 2, 0], [1, 0, 0, 2]])
    np.testing.assert_allclose(graph.to_covariance(g).sigma, expected, atol=1e-15)


def test_covariance_purity_properties(rng):
    for _ in range(50):
        g = random_graph(rng, max_n=12)
        cov = graph.to_covariance(g)
        two_s = 2 * cov.sigma
        om = symplectic_form(g.n)
        assert np.max(np.abs(two_s @ om @ two_s - om)) < 1e-9 * max(1, np.max(np.abs(two_s)) ** 2)
        assert cov.is_pure()
        det = np.linalg.det(cov.sigma)
        assert abs(det * 4.0**g.n - 1) < 1e-9


def test_from_covariance_examples():
    g = graph.from_covariance(graph.CovarianceMatrix(0.5 * np.eye(4)))
    np.testing.assert_allclose(g.z, 1j * np.eye(2), atol=1e-15)
    with pytest.raises(NotPure):
        graph.from_covariance(np.eye(4))


def test_covariance_round_trip(rng):
    for _ in range(100):
        g = random_graph(rng, max_n=12)
        back = graph.from_covariance(graph.to_covariance(g), labels=g.labels)
        assert np.linalg.norm(back.z - g.z) < 1e-10 * max(1, np.linalg.norm(g.z))
        assert back.labels == g.labels


def test_wigner_params_vacuum():
    w = graph.wigner_params(graph.vacuum(1))
    np.testing.assert_allclose(w.precision, 2 * np.eye(2), atol=1e-15)
    assert w.log_norm == pytest.approx(np.log(1 / np.pi), abs=1e-14)


def test_wigner_normalisation(rng):
    # log_norm matches (2 pi)^-N det(Sigma)^-1/2 evaluated independently
    g = random_graph(rng, n=3)
    sigma = graph.to_covariance(g).sigma
    expected = np.log((2 * np.pi) ** -3 / np.sqrt(np.linalg.det(sigma)))
    assert graph.wigner_params(g).log_norm == pytest.approx(expected, abs=1e-12)


def test_wavefunction_params():
    w = graph.wavefunction_params(graph.vacuum(1))
    np.testing.assert_allclose(w.quad_form, [[1.0]])
    assert w.log_norm == pytest.approx(np.log(np.pi**-0.25), abs=1e-15)
    g = GaussianGraph([[1j * np.exp(-2)]])
    np.testing.assert_allclose(graph.wavefunction_params(g).quad_form, [[np.exp(-2)]])


def test_wavefunction_is_normalised(rng):
    g = random_graph(rng, n=2)
    w = graph.wavefunction_params(g)
    # psi ~ exp(i q^T Z q / 2), so the quadratic form is -iZ = U - iV
    np.testing.assert_allclose(w.quad_form, -1j * g.z, atol=1e-15)
    # |psi|^2 integrates to exp(2 log_norm) pi^(N/2) / sqrt(det U) = 1
    total = np.exp(2 * w.log_norm) * np.pi ** (g.n / 2) / np.sqrt(np.linalg.det(g.u))
    assert total == pytest.approx(1.0, abs=1e-12)


def test_nullifier_set_examples():
    ns = graph.nullifier_set(graph.vacuum(1))
    np.testing.assert_array_equal(ns.m_left, [[1]])
    np.testing.assert_array_equal(ns.m_right, [[1j]])
    r = 0.4
    g = GaussianGraph(X + 1j * np.exp(-2 * r) * np.eye(2))
    ns = graph.nullifier_set(g)
    np.testing.assert_allclose(ns.m_right[0], [1j * np.exp(-2 * r), 1])
    np.testing.assert_allclose(ns.m_right[1], [1, 1j * np.exp(-2 * r)])
    ns = graph.nullifier_set(g, 2 * np.eye(2))
    np.testing.assert_allclose(ns.m_left, 2 * np.eye(2))
    np.testing.assert_allclose(ns.m_right, 2 * g.z)
    with pytest.raises(SingularMatrix):
        graph.nullifier_set(g, np.zeros((2, 2)))


def test_nullifiers_annihilate_state(rng):
    # Sigma-weighted second moment of p - Z q: <n n^T> = 0 for an annihilator
    g = random_graph(rng, n=4)
    sigma = graph.to_covariance(g).sigma
    b = np.hstack([-g.z, np.eye(4)])
    second = b @ (sigma + 0.5j * symplectic_form(4)) @ b.T
    np.testing.assert_allclose(second, 0, atol=1e-10)


def test_annihilator_coeffs_examples():
    cq, cp = graph.annihilator_coeffs(graph.vacuum(1))
    np.testing.assert_allclose(cp, [[1j / np.sqrt(2)]])
    np.testing.assert_allclose(cq, [[1 / np.sqrt(2)]])
    cq, cp = graph.annihilator_coeffs(GaussianGraph([[2j]]))
    np.testing.assert_allclose(cp, [[1j / np.sqrt(2) / np.sqrt(2)]])
    np.testing.assert_allclose(cq, [[-1j / np.sqrt(2) / np.sqrt(2) * 2j]])


def test_annihilator_commutator(rng):
    for _ in range(50):
        g = random_graph(rng, max_n=8)
        np.testing.assert_allclose(graph.annihilator_commutator(g), np.eye(g.n), atol=1e-10)


def test_nullifier_covariance_examples(rng):
    np.testing.assert_allclose(graph.nullifier_covariance(graph.vacuum(3)), np.eye(3), atol=1e-15)
    r = 0.8
    g = GaussianGraph(X + 1j * np.exp(-2 * r) * np.eye(2))
    np.testing.assert_allclose(graph.nullifier_covariance(g), np.exp(-2 * r) * np.eye(2), atol=1e-12)
    for _ in range(20):
        g = random_graph(rng)
        np.testing.assert_allclose(graph.nullifier_covariance(g), g.u, atol=1e-10)


def test_ideal_error_examples():
    np.testing.assert_allclose(graph.ideal_error_matrix(graph.vacuum(3)), 0.5 * np.eye(3), atol=1e-15)
    assert graph.approximation_error(graph.vacuum(3)) == 1.5
    r, n = 0.6, 4
    g = GaussianGraph(np.ones((n, n)) - np.eye(n) + 1j * np.exp(-2 * r) * np.eye(n))
    assert graph.approximation_error(g) == pytest.approx(n / 2 * np.exp(-2 * r), abs=1e-15)


def test_error_is_sum_of_nullifier_variances(rng):
    g = random_graph(rng, n=5)
    m = graph.ideal_error_matrix(g)
    np.testing.assert_allclose(m, 0.5 * g.u, atol=1e-10)
    assert np.trace(m) == pytest.approx(graph.approximation_error(g), abs=1e-10)
