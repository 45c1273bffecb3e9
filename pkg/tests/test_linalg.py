import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gcalc import linalg
from gcalc.errors import DimensionMismatch, NotPositiveDefinite, NotSymmetric, SingularMatrix


def test_sqrt_spd_examples():
    np.testing.assert_allclose(linalg.sqrt_spd(np.eye(3)), np.eye(3), atol=1e-15)
    np.testing.assert_allclose(linalg.sqrt_spd(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-14)
    m = np.array([[2.0, 1.0], [1.0, 2.0]])
    r = linalg.sqrt_spd(m)
    np.testing.assert_allclose(r @ r, m, atol=1e-12)
    # eigenvalue oracle: sqrt of 1 and 3 along (1,-1) and (1,1)
    expected = 0.5 * np.array([[np.sqrt(3) + 1, np.sqrt(3) - 1], [np.sqrt(3) - 1, np.sqrt(3) + 1]])
    np.testing.assert_allclose(r, expected, atol=1e-14)


def test_sqrt_spd_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        linalg.sqrt_spd(np.diag([1.0, 0.0]))
    with pytest.raises(NotPositiveDefinite):
        linalg.sqrt_spd(np.diag([1.0, -2.0]))


def test_exp_sym_examples():
    np.testing.assert_allclose(linalg.exp_sym(np.zeros((2, 2))), np.eye(2), atol=0)
    np.testing.assert_allclose(linalg.exp_sym(np.diag([np.log(2), np.log(3)])), np.diag([2.0, 3.0]),
                               rtol=1e-14)
    x = np.array([[0.0, 1.0], [1.0, 0.0]])
    c, s = 1.5430806348152437, 1.1752011936438014
    np.testing.assert_allclose(linalg.exp_sym(-2 * 0.5 * x), [[c, -s], [-s, c]], atol=1e-14)


def test_log_spd_examples():
    np.testing.assert_allclose(linalg.log_spd(np.eye(2)), np.zeros((2, 2)), atol=1e-15)
    np.testing.assert_allclose(linalg.log_spd(np.diag([np.e, np.e**2])), np.diag([1.0, 2.0]),
                               atol=1e-14)
    c, s = np.cosh(1), np.sinh(1)
    np.testing.assert_allclose(linalg.log_spd([[c, -s], [-s, c]]), [[0, -1], [-1, 0]], atol=1e-13)


def test_solve_right_examples():
    b = np.array([[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
    np.testing.assert_array_equal(linalg.solve_right(np.eye(2), b), b)
    np.testing.assert_allclose(linalg.solve_right(np.diag([2.0, 4.0]), np.eye(2)),
                               np.diag([0.5, 0.25]))
    with pytest.raises(SingularMatrix) as info:
        linalg.solve_right(np.zeros((2, 2)), np.eye(2))
    assert info.value.condition == np.inf


def test_solve_right_complex(rng):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    b = rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4))
    x = linalg.solve_right(a, b)
    np.testing.assert_allclose(x @ a, b, atol=1e-12)


def test_solve_right_reports_condition():
    a = np.diag([1.0, 1e-14])
    with pytest.raises(SingularMatrix) as info:
        linalg.solve_right(a, np.eye(2))
    assert info.value.condition > 1e12


def test_hadamard_examples():
    m = np.arange(9.0).reshape(3, 3)
    np.testing.assert_array_equal(linalg.hadamard(np.eye(3), m), np.diag(np.diag(m)))
    np.testing.assert_array_equal(linalg.hadamard(np.ones((3, 3)), m), m)
    np.testing.assert_array_equal(linalg.hadamard([[1, 2], [3, 4]], [[5, 6], [7, 8]]),
                                  [[5, 12], [21, 32]])
    with pytest.raises(DimensionMismatch):
        linalg.hadamard(np.eye(2), np.eye(3))


def test_real_sym_is_exact_and_frozen():
    m = np.array([[1.0, 2.0 + 1e-13], [2.0, 3.0]])
    s = linalg.real_sym(m)
    assert np.array_equal(s, s.T)
    with pytest.raises(ValueError):
        s[0, 0] = 5
    with pytest.raises(NotSymmetric):
        linalg.real_sym([[1.0, 2.0], [2.5, 3.0]])


def test_complex_sym_tolerance_is_relative():
    z = 1e6 * np.array([[1j, 1.0], [1.0, 1j]])
    z[1, 0] += 1e-5
    linalg.complex_sym(z)
    with pytest.raises(NotSymmetric):
        linalg.complex_sym(np.array([[1j, 1.0], [1.0 + 1e-6, 1j]]))


def test_symplectic_form_squares_to_minus_identity():
    for n in range(1, 5):
        om = linalg.symplectic_form(n)
        np.testing.assert_array_equal(om @ om, -np.eye(2 * n))


def _spd_from(b, n):
    b = b[:n, :n]
    return b @ b.T / n + 0.1 * np.eye(n)


matrices = arrays(np.float64, (12, 12), elements=st.floats(-3, 3, allow_nan=False))


@settings(max_examples=60, deadline=None)
@given(b=matrices, n=st.integers(1, 12))
def test_sqrt_and_log_round_trips(b, n):
    m = _spd_from(b, n)
    r = linalg.sqrt_spd(m)
    assert np.linalg.norm(r @ r - m) <= 1e-10 * np.linalg.norm(m)
    back = linalg.exp_sym(linalg.log_spd(m))
    assert np.linalg.norm(back - m) <= 1e-10 * np.linalg.norm(m)


@settings(max_examples=60, deadline=None)
@given(b=matrices, n=st.integers(1, 12))
def test_exp_sym_spectrum(b, n):
    m = (b[:n, :n] + b[:n, :n].T) / 2
    w = np.linalg.eigvalsh(m)
    e = np.linalg.eigvalsh(linalg.exp_sym(m))
    # absolute accuracy of a symmetric eigensolver scales with the largest eigenvalue
    np.testing.assert_allclose(e, np.exp(w), rtol=1e-12, atol=1e-12 * max(1.0, np.exp(w[-1])))


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 12), log_cond=st.floats(0, 8))
def test_solve_right_residual(seed, n, log_cond):
    rng = np.random.default_rng(seed)
    q1, _ = np.linalg.qr(rng.normal(size=(n, n)))
    q2, _ = np.linalg.qr(rng.normal(size=(n, n)))
    a = q1 @ np.diag(np.logspace(0, -log_cond, n)) @ q2
    # right-hand sides in the range of the map, as produced by the Mobius map
    x_true = rng.normal(size=(3, n)) + 1j * rng.normal(size=(3, n))
    b = x_true @ a
    x = linalg.solve_right(a, b)
    assert np.linalg.norm(x @ a - b) / np.linalg.norm(b) < 1e-10


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 12), log_cond=st.floats(0, 5))
def test_solve_right_residual_arbitrary_rhs(seed, n, log_cond):
    rng = np.random.default_rng(seed)
    q1, _ = np.linalg.qr(rng.normal(size=(n, n)))
    q2, _ = np.linalg.qr(rng.normal(size=(n, n)))
    a = q1 @ np.diag(np.logspace(0, -log_cond, n)) @ q2
    b = rng.normal(size=(3, n)) + 1j * rng.normal(size=(3, n))
    x = linalg.solve_right(a, b)
    assert np.linalg.norm(x @ a - b) / np.linalg.norm(b) < 1e-10
