"""Symplectic matrices and their action on graphs.

A Gaussian unitary acts on the quadrature vector ``x = (q; p)`` as
``x -> S x`` with ``S Omega S^T = Omega``. On graphs it acts through the
Mobius map ``Z' = (C + D Z)(A + B Z)^-1``.
"""

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatch,
    DuplicateIndex,
    IndexOutOfRange,
    NonFiniteParameter,
    NotSymplectic,
    NotUnitary,
)
from .graph import GaussianGraph

#: Relative tolerance on ``S Omega S^T = Omega``, scaled by ``max(1, max|S|^2)``.
TOL_SYMPLECTIC = 1e-10


def symplectic_residual(s):
    s = np.asarray(s, dtype=float)
    om = linalg.symplectic_form(s.shape[0] // 2)
    return float(np.max(np.abs(s @ om @ s.T - om)))


class Symplectic:
    """Real ``2n x 2n`` symplectic matrix in (q..., p...) block order.

    Parameters
    ----------
    s : array_like
    check : bool
        Validate ``S Omega S^T = Omega``; disable only for matrices built
        from exact constructors.
    """

    __slots__ = ("_s",)

    def __init__(self, s, *, check=True, tol=None):
        s = np.array(s, dtype=float)
        if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] % 2 or s.shape[0] == 0:
            raise DimensionMismatch(f"symplectic matrix must be 2N x 2N, got shape {s.shape}")
        if not np.all(np.isfinite(s)):
            raise NonFiniteParameter("symplectic matrix has non-finite entries")
        if check:
            tol = TOL_SYMPLECTIC if tol is None else tol
            res = symplectic_residual(s)
            if res > tol * max(1.0, float(np.max(np.abs(s))) ** 2):
                raise NotSymplectic(f"S Omega S^T differs from Omega by {res:.3e}")
        s.setflags(write=False)
        self._s = s

    @property
    def s(self):
        return self._s

    @property
    def n(self):
        return self._s.shape[0] // 2

    @property
    def blocks(self):
        """``(A, B, C, D)`` with ``S = [[A, B], [C, D]]``."""
        n = self.n
        s = self._s
        return s[:n, :n], s[:n, n:], s[n:, :n], s[n:, n:]

    def inverse(self):
        """``S^-1 = -Omega S^T Omega``, exact for symplectic ``S``."""
        om = linalg.symplectic_form(self.n)
        return Symplectic(-om @ self._s.T @ om, check=False)

    def __matmul__(self, other):
        if not isinstance(other, Symplectic):
            return NotImplemented
        return compose(self, other)

    def is_orthogonal(self, tol=1e-10):
        return bool(np.max(np.abs(self._s @ self._s.T - np.eye(2 * self.n))) <= tol)

    def allclose(self, other, tol=1e-10):
        other = other.s if isinstance(other, Symplectic) else np.asarray(other)
        return other.shape == self._s.shape and np.linalg.norm(self._s - other) <= tol

    def __repr__(self):
        return f"Symplectic(n={self.n})"


def identity(n):
    return Symplectic(np.eye(2 * n), check=False)


def _finite(x, name):
    x = float(x)
    if not np.isfinite(x):
        raise NonFiniteParameter(f"{name} must be finite, got {x}")
    return x


def shear(g):
    """Local shear ``p -> p + g q``."""
    g = _finite(g, "shear weight")
    return Symplectic([[1.0, 0.0], [g, 1.0]], check=False)


def squeeze(r):
    """``diag(e^r, e^-r)``: stretches ``q`` by ``e^r``."""
    r = _finite(r, "squeezing parameter")
    return Symplectic(np.diag([np.exp(r), np.exp(-r)]), check=False)


def phase(theta):
    """Phase-plane rotation ``[[cos, sin], [-sin, cos]]``."""
    theta = _finite(theta, "phase angle")
    c, s = np.cos(theta), np.sin(theta)
    return Symplectic([[c, s], [-s, c]], check=False)


def fourier():
    """Fourier transform ``q -> -p, p -> q``, i.e. ``phase(-pi/2)`` exactly."""
    return Symplectic([[0.0, -1.0], [1.0, 0.0]], check=False)


def inverse_fourier():
    """``phase(pi/2)`` exactly."""
    return Symplectic([[0.0, 1.0], [-1.0, 0.0]], check=False)


_LOCAL = {"shear": shear, "squeeze": squeeze, "phase": phase}


def local_symplectic(kind, param=None):
    """Single-mode symplectic by name: shear, squeeze, phase, fourier or inverse_fourier."""
    if kind == "fourier":
        return fourier()
    if kind == "inverse_fourier":
        return inverse_fourier()
    try:
        return _LOCAL[kind](param)
    except KeyError:
        raise ValueError(f"unknown local operation {kind!r}") from None


def cz(g=1.0):
    """Controlled-Z of weight ``g``: ``p1 -> p1 + g q2``, ``p2 -> p2 + g q1``."""
    g = _finite(g, "CZ weight")
    s = np.eye(4)
    s[2, 1] = g
    s[3, 0] = g
    return Symplectic(s, check=False)


def beamsplitter(theta):
    """Rotation by ``theta`` of both the q and the p pair; ``sin theta`` is the reflectivity."""
    theta = _finite(theta, "beamsplitter angle")
    c, s = np.cos(theta), np.sin(theta)
    rot = np.array([[c, -s], [s, c]])
    z = np.zeros((2, 2))
    return Symplectic(np.block([[rot, z], [z, rot]]), check=False)


def two_mode_symplectic(kind, param):
    if kind == "cz":
        return cz(param)
    if kind == "beamsplitter":
        return beamsplitter(param)
    raise ValueError(f"unknown two-mode operation {kind!r}")


def passive_symplectic(u, tol=1e-10):
    """Orthogonal symplectic ``[[X, -Y], [Y, X]]`` of the unitary ``u = X + iY``.

    This is the action ``a -> u a`` on the mode operators ``a = (q + ip)/sqrt 2``.
    """
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionMismatch(f"unitary must be square, got shape {u.shape}")
    err = float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
    if err > tol:
        raise NotUnitary(f"matrix is not unitary (max |U^H U - I| = {err:.3e})")
    x, y = u.real, u.imag
    return Symplectic(np.block([[x, -y], [y, x]]))


def embed(s_small, nodes, n_total):
    """Act with ``s_small`` on the modes ``nodes`` (in that order) and as identity elsewhere."""
    nodes = [int(j) for j in nodes]
    k = s_small.n
    if len(nodes) != k:
        raise DimensionMismatch(f"{k}-mode operation given {len(nodes)} nodes")
    for j in nodes:
        if not 0 <= j < n_total:
            raise IndexOutOfRange(f"node {j} out of range for {n_total} modes")
    if len(set(nodes)) != k:
        raise DuplicateIndex(f"repeated node in {nodes}")
    idx = np.array(nodes + [j + n_total for j in nodes])
    s = np.eye(2 * n_total)
    s[np.ix_(idx, idx)] = s_small.s
    return Symplectic(s, check=False)


def compose(*ss):
    """Matrix product ``s1 @ s2 @ ...``; the rightmost acts first."""
    if not ss:
        raise ValueError("compose needs at least one symplectic")
    n = ss[0].n
    out = ss[0].s
    for s in ss[1:]:
        if s.n != n:
            raise DimensionMismatch(f"cannot compose {n}-mode and {s.n}-mode symplectics")
        out = out @ s.s
    return Symplectic(out)


def graph_to_symplectic(g):
    """``S_(U,V) = [[U^-1/2, 0], [V U^-1/2, U^1/2]]``, which maps the vacuum to ``g``."""
    u_isq = linalg.inv_sqrt_spd(g.u)
    u_sq = linalg.sqrt_spd(g.u)
    z = np.zeros_like(u_isq)
    return Symplectic(np.block([[u_isq, z], [g.v @ u_isq, u_sq]]))


def pre_iwasawa(s):
    """Factor ``S = [[I, 0], [V, I]] diag(U^-1/2, U^1/2) O``.

    Returns ``(V, U, O)`` with ``U`` positive definite, ``V`` symmetric and
    ``O`` orthogonal symplectic.
    """
    a, b, c, d = s.blocks
    u = linalg.real_sym(linalg.inv(a @ a.T + b @ b.T), tol=1e-8, name="U")
    v = linalg.real_sym((c @ a.T + d @ b.T) @ u, tol=1e-8, name="V")
    n = s.n
    eye = np.eye(n)
    zero = np.zeros((n, n))
    lower = np.block([[eye, zero], [-v, eye]])
    scale = np.block([[linalg.sqrt_spd(u), zero], [zero, linalg.inv_sqrt_spd(u)]])
    o = Symplectic(scale @ lower @ s.s, tol=1e-8)
    return v, u, o


def mobius(s, g, tol_cond=None):
    """Graph after the Gaussian unitary ``s``: ``Z' = (C + D Z)(A + B Z)^-1``."""
    if s.n != g.n:
        raise DimensionMismatch(f"{s.n}-mode symplectic applied to {g.n}-mode graph")
    a, b, c, d = s.blocks
    z = g.z
    return g.replace(linalg.solve_right(a + b @ z, c + d @ z, tol_cond))
