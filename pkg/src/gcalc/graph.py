"""Gaussian pure states as complex-weighted graphs.

A state of ``n`` modes is stored as the complex symmetric adjacency matrix
``Z = V + iU`` with ``U`` positive definite. Quadratures are ordered
``(q_1..q_n, p_1..p_n)``, hbar is 1 and the vacuum has covariance ``I/2``.
Displacements are not represented.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatch,
    GraphCalculusError,
    IndexOutOfRange,
    NotPositiveDefinite,
    NotPure,
    UnknownLabel,
)

#: Relative tolerance on ``4 Sigma Omega Sigma = Omega`` used by purity checks.
TOL_PURITY = 1e-9


def _default_labels(n):
    return tuple(str(j) for j in range(n))


class GaussianGraph:
    """Immutable graph ``Z = V + iU`` of an ``n``-mode Gaussian pure state.

    Parameters
    ----------
    z : array_like, shape (n, n)
        Complex symmetric adjacency matrix. It is symmetrized on storage.
    labels : sequence of str, optional
        Stable node identifiers; defaults to ``"0", "1", ...``.
    tol : float, optional
        Relative symmetry tolerance, defaults to :data:`gcalc.linalg.TOL_SYM`.

    Raises
    ------
    NotSymmetric, NotPositiveDefinite, DimensionMismatch
    """

    __slots__ = ("_z", "_labels", "_index")

    def __init__(self, z, labels=None, *, tol=None):
        z = np.asarray(z, dtype=complex)
        if z.ndim != 2 or z.shape[0] != z.shape[1] or z.shape[0] == 0:
            raise DimensionMismatch(f"Z must be a non-empty square matrix, got shape {z.shape}")
        if not np.all(np.isfinite(z)):
            raise GraphCalculusError("Z has non-finite entries")
        z = linalg.complex_sym(z, tol, "Z")
        n = z.shape[0]
        if not linalg.is_positive_definite(z.imag):
            lam = linalg.min_eigenvalue(z.imag)
            raise NotPositiveDefinite(
                f"Im Z is not positive definite (min eigenvalue {lam:.3e})", min_eigenvalue=lam
            )
        labels = _default_labels(n) if labels is None else tuple(str(s) for s in labels)
        if len(labels) != n:
            raise DimensionMismatch(f"{len(labels)} labels given for {n} modes")
        index = {s: j for j, s in enumerate(labels)}
        if len(index) != n:
            raise GraphCalculusError(f"labels are not unique: {labels}")
        self._z = z
        self._labels = labels
        self._index = index

    @property
    def z(self):
        return self._z

    @property
    def labels(self):
        return self._labels

    @property
    def n(self):
        return self._z.shape[0]

    @property
    def u(self):
        """Imaginary part ``U`` (the squeezing/error part)."""
        return self._z.imag

    @property
    def v(self):
        """Real part ``V`` (the ideal cluster-state graph)."""
        return self._z.real

    def index(self, node):
        """Resolve a node reference to a positional index.

        Strings are looked up as labels; integers are positions.
        """
        if isinstance(node, (int, np.integer)) and not isinstance(node, bool):
            if not 0 <= node < self.n:
                raise IndexOutOfRange(f"node index {node} out of range for {self.n} modes")
            return int(node)
        try:
            return self._index[str(node)]
        except KeyError:
            raise UnknownLabel(f"no node labelled {node!r}") from None

    def replace(self, z, labels=None):
        """New graph with matrix ``z``, keeping the labels unless given."""
        return GaussianGraph(z, self._labels if labels is None else labels)

    def allclose(self, other, tol=1e-10):
        other_z = other.z if isinstance(other, GaussianGraph) else np.asarray(other)
        return other_z.shape == self._z.shape and np.linalg.norm(self._z - other_z) <= tol

    def __repr__(self):
        return f"GaussianGraph(n={self.n}, labels={list(self._labels)})"


def from_parts(v, u, labels=None):
    """Build ``Z = v + i u`` from its real and imaginary parts."""
    v = linalg.real_sym(v, name="V")
    u = linalg.real_sym(u, name="U")
    if v.shape != u.shape:
        raise DimensionMismatch(f"V has shape {v.shape} but U has shape {u.shape}")
    return GaussianGraph(v + 1j * u, labels)


def vacuum(n, labels=None):
    """The ``n``-mode vacuum, ``Z = iI``."""
    if n < 1:
        raise DimensionMismatch("vacuum needs at least one mode")
    return GaussianGraph(1j * np.eye(n), labels)


class CovarianceMatrix:
    """Symmetrized covariance matrix in (q..., p...) ordering.

    Construction checks symmetry and positive definiteness only; purity is
    tested by :meth:`is_pure` and enforced by :func:`from_covariance`.
    """

    __slots__ = ("_sigma",)

    def __init__(self, sigma, *, tol=None):
        sigma = np.asarray(sigma, dtype=float)
        if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or sigma.shape[0] % 2:
            raise DimensionMismatch(f"covariance must be 2N x 2N, got shape {sigma.shape}")
        sigma = linalg.real_sym(sigma, tol, "Sigma")
        if not linalg.is_positive_definite(sigma):
            raise NotPositiveDefinite("Sigma is not positive definite")
        self._sigma = sigma

    @property
    def sigma(self):
        return self._sigma

    @property
    def n(self):
        return self._sigma.shape[0] // 2

    def blocks(self):
        """The ``qq``, ``qp``, ``pq`` and ``pp`` blocks."""
        n = self.n
        s = self._sigma
        return s[:n, :n], s[:n, n:], s[n:, :n], s[n:, n:]

    def purity_residual(self):
        """``max |4 Sigma Omega Sigma - Omega|`` relative to ``max(1, |2 Sigma|^2)``."""
        om = linalg.symplectic_form(self.n)
        two_s = 2 * self._sigma
        res = np.max(np.abs(two_s @ om @ two_s - om))
        return float(res / max(1.0, np.max(np.abs(two_s)) ** 2))

    def is_pure(self, tol=None):
        return self.purity_residual() <= (TOL_PURITY if tol is None else tol)

    def __repr__(self):
        return f"CovarianceMatrix(n={self.n})"


@dataclass(frozen=True)
class NullifierSet:
    """Nullifier vector ``m_left @ p - m_right @ q`` annihilating the state."""

    m_left: np.ndarray
    m_right: np.ndarray


@dataclass(frozen=True)
class WignerParams:
    """``W(x) = exp(log_norm - x^T precision x / 2)``."""

    precision: np.ndarray
    log_norm: float


@dataclass(frozen=True)
class WavefunctionParams:
    """``psi(q) = exp(log_norm - q^T quad_form q / 2)``, global phase fixed to 0."""

    quad_form: np.ndarray
    log_norm: float


def to_covariance(g):
    u = g.u
    v = g.v
    u_inv = linalg.symmetrize(linalg.inv(u))
    u_inv_v = u_inv @ v
    sigma = 0.5 * np.block([[u_inv, u_inv_v], [u_inv_v.T, u + v @ u_inv_v]])
    return CovarianceMatrix(linalg.symmetrize(sigma))


def from_covariance(cov, labels=None, *, tol=None):
    """Recover ``Z = <q q^T>^-1 <q p^T>`` from a pure-state covariance matrix.

    ``<q p^T>`` is the symmetrized ``qp`` block plus ``i/2`` from the
    commutator.

    Raises
    ------
    NotPure
        If ``2 Sigma`` fails the symplectic test within ``tol``.
    SingularMatrix
        If the ``qq`` block is singular.
    """
    if not isinstance(cov, CovarianceMatrix):
        cov = CovarianceMatrix(cov)
    if not cov.is_pure(tol):
        raise NotPure(f"covariance is not pure (residual {cov.purity_residual():.3e})")
    qq, qp, _, _ = cov.blocks()
    n = cov.n
    # Z = qq^-1 (qp + i/2 I); right-division on the transpose keeps one solver
    z = linalg.solve_right(qq.T, (qp + 0.5j * np.eye(n)).T).T
    return GaussianGraph(z, labels, tol=tol)


def wigner_params(g):
    cov = to_covariance(g)
    _, logdet = np.linalg.slogdet(cov.sigma)
    precision = linalg.symmetrize(linalg.inv(cov.sigma))
    return WignerParams(precision, float(-g.n * np.log(2 * np.pi) - 0.5 * logdet))


def wavefunction_params(g):
    _, logdet = np.linalg.slogdet(g.u)
    return WavefunctionParams(g.u - 1j * g.v, float(-g.n / 4 * np.log(np.pi) + logdet / 4))


def nullifier_set(g, m_left=None):
    if m_left is None:
        return NullifierSet(np.eye(g.n, dtype=complex), g.z.copy())
    m = np.asarray(m_left, dtype=complex)
    if m.shape != (g.n, g.n):
        raise DimensionMismatch(f"M must be {g.n} x {g.n}, got {m.shape}")
    linalg.inv(m)  # raises SingularMatrix
    return NullifierSet(m, m @ g.z)


def annihilator_coeffs(g):
    """Coefficients of ``a_Z = cq @ q + cp @ p``.

    ``cp = (i/sqrt 2) U^(-1/2)`` and ``cq = -cp @ Z``.
    """
    cp = (1j / np.sqrt(2)) * linalg.inv_sqrt_spd(g.u)
    return -cp @ g.z, cp


def annihilator_commutator(g):
    """Matrix of commutators ``[a_j, a_k^dagger]``; the identity for a valid graph."""
    cq, cp = annihilator_coeffs(g)
    b = np.hstack([cq, cp])
    return b @ (1j * linalg.symplectic_form(g.n)) @ b.conj().T


def _linear_cov(b, sigma):
    return b @ sigma @ b.conj().T


def nullifier_covariance(g):
    """Covariance of the nullifiers ``p - Z q`` evaluated through ``Sigma``.

    Equals ``Im Z``; the residual imaginary part of ``B Sigma B^H`` is
    dropped after symmetrization.
    """
    b = np.hstack([-g.z, np.eye(g.n)])
    c = _linear_cov(b, to_covariance(g).sigma)
    return linalg.symmetrize(c.real)


def ideal_error_matrix(g):
    """Covariance of the ideal nullifiers ``p - V q``, equal to ``U / 2``."""
    b = np.hstack([-g.v, np.eye(g.n)])
    return linalg.symmetrize(b @ to_covariance(g).sigma @ b.T)


def approximation_error(g):
    """Scalar approximation error ``tr(U) / 2``."""
    return 0.5 * float(np.trace(g.u))


__all__ = [
    "GaussianGraph",
    "CovarianceMatrix",
    "NullifierSet",
    "WignerParams",
    "WavefunctionParams",
    "TOL_PURITY",
    "from_parts",
    "vacuum",
    "to_covariance",
    "from_covariance",
    "wigner_params",
    "wavefunction_params",
    "nullifier_set",
    "annihilator_coeffs",
    "annihilator_commutator",
    "nullifier_covariance",
    "ideal_error_matrix",
    "approximation_error",
]
