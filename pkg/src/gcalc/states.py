"""Factories for the named state families and their parent Hamiltonians."""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatch,
    NonFiniteParameter,
    NotSelfInverse,
    NotUnitary,
    ParameterOutOfRange,
    UnsupportedOperation,
)
from .graph import GaussianGraph

#: Largest accepted squeezing parameter; ``e^(-2 R_MAX)`` is about 4e-18.
R_MAX = 20.0


def _squeezing(r, name="r"):
    r = float(r)
    if not np.isfinite(r):
        raise NonFiniteParameter(f"{name} must be finite")
    if not 0 <= r <= R_MAX:
        raise ParameterOutOfRange(f"{name} = {r} outside [0, {R_MAX}]")
    return r


@dataclass(frozen=True)
class HGraphSpec:
    """H-graph ``G`` and squeezing strength ``alpha`` defining ``Z = i exp(-2 alpha G)``."""

    g: np.ndarray
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "g", linalg.real_sym(self.g, name="G"))
        alpha = float(self.alpha)
        if not np.isfinite(alpha):
            raise NonFiniteParameter("alpha must be finite")
        if alpha < 0:
            raise ParameterOutOfRange(f"alpha must be non-negative, got {alpha}")
        object.__setattr__(self, "alpha", alpha)

    @property
    def n(self):
        return self.g.shape[0]


def canonical_cluster(a, r, labels=None):
    """Squeezed vacua joined by CZ gates of weights ``a``: ``Z = a + i e^(-2r) I``."""
    a = linalg.real_sym(a, name="A")
    r = _squeezing(r)
    return GaussianGraph(a + 1j * np.exp(-2 * r) * np.eye(a.shape[0]), labels)


def cluster_family_alpha(a, alpha, labels=None):
    """``Z = tanh(2 alpha) A + i sech(2 alpha) I``, which tends to ``A`` as alpha grows."""
    a = linalg.real_sym(a, name="A")
    alpha = _squeezing(alpha, "alpha")
    x = 2 * alpha
    return GaussianGraph(np.tanh(x) * a + 1j * np.eye(a.shape[0]) / np.cosh(x), labels)


def hgraph_state(spec, labels=None):
    """``Z = i exp(-2 alpha G)``, purely imaginary."""
    return GaussianGraph(1j * linalg.exp_sym(-2 * spec.alpha * spec.g), labels)


def hgraph_state_selfinv(spec, labels=None, tol=1e-10):
    """Closed form ``Z = i cosh(2a) I - i sinh(2a) G`` for ``G^2 = I``."""
    g = spec.g
    eye = np.eye(g.shape[0])
    err = float(np.max(np.abs(g @ g - eye)))
    if err > tol:
        raise NotSelfInverse(f"G^2 differs from I by {err:.3e}")
    x = 2 * spec.alpha
    return GaussianGraph(1j * (np.cosh(x) * eye - np.sinh(x) * g), labels)


def ghz_hgraph(n, alpha, beta=1.0):
    """H-graph ``G = beta I - J`` of the GHZ family (``J`` all-ones).

    ``beta = 1`` gives the hollow complete graph with weights -1. The
    spectrum is ``beta`` (n-1 times) and ``beta - n``, so it is full rank
    and of mixed sign exactly when ``0 < beta < n``.
    """
    n = int(n)
    if n < 2:
        raise ParameterOutOfRange(f"GHZ state needs n >= 2, got {n}")
    beta = float(beta)
    if not np.isfinite(beta):
        raise NonFiniteParameter("beta must be finite")
    if not 0 < beta < n:
        raise ParameterOutOfRange(f"beta must lie in (0, {n}), got {beta}")
    return HGraphSpec(beta * np.eye(n) - np.ones((n, n)), alpha)


def offline_squeezed_state(l, r, labels=None, tol=1e-10):
    """Graph of modes squeezed by ``r_k`` then mixed by the unitary ``l``.

    With ``X + iY = l`` and ``E = diag(e^(-2 r_k))`` the nullifier
    matrices are ``A = X + i E Y`` and ``B = -Y + i E X``, so ``Z = A^-1 B``.
    The same state results from squeezing the vacuum and applying
    ``passive_symplectic(l.conj().T)``.
    """
    l = np.asarray(l, dtype=complex)
    if l.ndim != 2 or l.shape[0] != l.shape[1]:
        raise DimensionMismatch(f"unitary must be square, got shape {l.shape}")
    err = float(np.max(np.abs(l.conj().T @ l - np.eye(l.shape[0]))))
    if err > tol:
        raise NotUnitary(f"matrix is not unitary (max |L^H L - I| = {err:.3e})")
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if r.shape != (l.shape[0],):
        raise DimensionMismatch(f"{l.shape[0]} modes but {r.size} squeezing values")
    for rk in r:
        _squeezing(rk)
    x, y = l.real, l.imag
    e = np.exp(-2 * r)[:, None]
    a = x + 1j * e * y
    b = -y + 1j * e * x
    z = linalg.solve_right(a.T, b.T).T
    return GaussianGraph(z, labels)


@dataclass(frozen=True)
class QuadraticHamiltonian:
    """``H = p^T pp p + q^T qq q + (q^T qp p + p^T qp^T q) + energy_shift``.

    All coefficient matrices are real; the cross term is written in its
    Hermitian, symmetrically ordered form.
    """

    pp: np.ndarray
    qq: np.ndarray
    qp: np.ndarray
    energy_shift: float

    def expectation(self, cov):
        """Expectation value in a Gaussian state with covariance ``cov`` and zero mean."""
        sigma = getattr(cov, "sigma", cov)
        n = self.pp.shape[0]
        s_qq, s_qp, s_pp = sigma[:n, :n], sigma[:n, n:], sigma[n:, n:]
        val = (
            np.sum(self.pp * s_pp)
            + np.sum(self.qq * s_qq)
            + 2 * np.sum(self.qp * s_qp)
            + self.energy_shift
        )
        return float(val)


def ground_hamiltonian(g, simplified=False, tol=1e-12):
    """Positive Hamiltonian ``(p - Zq)^H (p - Zq)`` with ground state ``g``.

    Expanded: ``pp = I``, ``qq = Re(Z* Z) = U^2 + V^2``, ``qp = -V`` and the
    reordering constant ``-tr U``. With ``simplified=True`` the graph must be
    purely imaginary and the form ``p^T p + q^T U^2 q - tr U`` is built from
    ``U`` directly.
    """
    n = g.n
    u, v = g.u, g.v
    if simplified:
        if np.max(np.abs(v)) > tol:
            raise UnsupportedOperation("simplified Hamiltonian needs a purely imaginary graph")
        return QuadraticHamiltonian(np.eye(n), linalg.symmetrize(u @ u), np.zeros((n, n)),
                                    -float(np.trace(u)))
    zz = g.z.conj() @ g.z
    return QuadraticHamiltonian(np.eye(n), linalg.symmetrize(zz.real), -np.array(v),
                                -float(np.trace(u)))


def hgraph_from_state(g, alpha, tol=1e-12):
    """Recover the H-graph ``G = -log(U) / (2 alpha)`` of a purely imaginary graph."""
    alpha = float(alpha)
    if not np.isfinite(alpha) or alpha <= 0:
        raise ParameterOutOfRange(f"alpha must be positive, got {alpha}")
    if np.max(np.abs(g.v)) > tol:
        raise UnsupportedOperation("only purely imaginary graphs are H-graph states")
    return HGraphSpec(-linalg.log_spd(g.u) / (2 * alpha), alpha)
