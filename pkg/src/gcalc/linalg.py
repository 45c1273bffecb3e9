"""Dense matrix primitives used throughout the calculus.

All matrix functions act on symmetric input and are evaluated through the
symmetric eigendecomposition, which picks the principal branch without
ambiguity.

Tolerances are module-level so they can be tuned in one place:

``TOL_SYM``
    relative symmetry tolerance, scaled by the largest entry magnitude
``TOL_PD``
    absolute lower bound on the smallest eigenvalue of a positive-definite
    matrix
``TOL_COND``
    lower bound on the reciprocal condition number accepted by
    :func:`solve_right`
"""

import warnings

import numpy as np
import scipy.linalg as sla

from .errors import DimensionMismatch, NotPositiveDefinite, NotSymmetric, SingularMatrix

TOL_SYM = 1e-10
TOL_PD = 1e-12
TOL_COND = 1e-12


def _square(m, name="matrix"):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {m.shape}")
    return m


def _frozen(m):
    m.setflags(write=False)
    return m


def asymmetry(m):
    """Largest entry of ``|m - m.T|``."""
    m = _square(m)
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m - m.T)))


def check_symmetric(m, tol=None, name="matrix"):
    """Raise :class:`NotSymmetric` unless ``m`` is symmetric within ``tol``.

    The tolerance is relative to the largest entry magnitude.
    """
    m = _square(m, name)
    tol = TOL_SYM if tol is None else tol
    scale = float(np.max(np.abs(m))) if m.size else 0.0
    err = asymmetry(m)
    if err > tol * scale:
        raise NotSymmetric(f"{name} is not symmetric (max |M - M^T| = {err:.3e})")
    return m


def symmetrize(m):
    """Return ``(m + m.T) / 2``; the result is exactly symmetric."""
    m = np.asarray(m)
    return (m + m.T) / 2


def real_sym(m, tol=None, name="matrix"):
    """Validate and symmetrize a real symmetric matrix (read-only copy)."""
    m = np.asarray(m)
    if np.iscomplexobj(m):
        if np.any(m.imag != 0):
            raise NotSymmetric(f"{name} must be real")
        m = m.real
    m = check_symmetric(np.asarray(m, dtype=float), tol, name)
    return _frozen(symmetrize(m))


def complex_sym(m, tol=None, name="matrix"):
    """Validate and symmetrize a complex symmetric matrix (read-only copy)."""
    m = check_symmetric(np.asarray(m, dtype=complex), tol, name)
    return _frozen(symmetrize(m))


def _eigh_spd(m, tol_pd=None, name="matrix"):
    m = _square(m, name)
    w, q = np.linalg.eigh(symmetrize(m))
    tol_pd = TOL_PD if tol_pd is None else tol_pd
    if w.size and w[0] <= tol_pd:
        raise NotPositiveDefinite(
            f"{name} is not positive definite (min eigenvalue {w[0]:.3e})",
            min_eigenvalue=float(w[0]),
        )
    return w, q


def _from_eig(f_w, q):
    return symmetrize((q * f_w) @ q.T)


def min_eigenvalue(m):
    """Smallest eigenvalue of a symmetric matrix."""
    return float(np.linalg.eigvalsh(symmetrize(_square(m)))[0])


def is_positive_definite(m, tol_pd=None):
    tol_pd = TOL_PD if tol_pd is None else tol_pd
    m = _square(m)
    return m.size == 0 or min_eigenvalue(m) > tol_pd


def sqrt_spd(m):
    """Principal square root of a symmetric positive-definite matrix."""
    w, q = _eigh_spd(m)
    return _from_eig(np.sqrt(w), q)


def inv_sqrt_spd(m):
    """Inverse principal square root ``m^(-1/2)``."""
    w, q = _eigh_spd(m)
    return _from_eig(1 / np.sqrt(w), q)


def exp_sym(m):
    """Matrix exponential of a real symmetric matrix."""
    m = _square(m)
    w, q = np.linalg.eigh(symmetrize(m))
    return _from_eig(np.exp(w), q)


def log_spd(m):
    """Principal logarithm of a symmetric positive-definite matrix."""
    w, q = _eigh_spd(m)
    return _from_eig(np.log(w), q)


def _rcond(lu, anorm, dtype):
    if anorm == 0:
        return 0.0
    (gecon,) = sla.get_lapack_funcs(("gecon",), (lu,))
    rcond, info = gecon(lu, anorm, norm="1")
    return float(rcond) if info == 0 else 0.0


def solve_right(a, b, tol_cond=None):
    """Return ``X = b @ inv(a)`` without forming the inverse.

    Raises
    ------
    SingularMatrix
        If the reciprocal 1-norm condition estimate of ``a`` is below
        ``tol_cond``; the exception carries the condition estimate.
    """
    a = _square(a, "a")
    b = np.asarray(b)
    if b.ndim != 2 or b.shape[1] != a.shape[0]:
        raise DimensionMismatch(f"cannot right-divide shape {b.shape} by {a.shape}")
    tol_cond = TOL_COND if tol_cond is None else tol_cond
    dtype = np.result_type(a, b, float)
    a = np.asarray(a, dtype=dtype)
    anorm = float(np.max(np.sum(np.abs(a), axis=0))) if a.size else 0.0
    if not np.all(np.isfinite(a)):
        raise SingularMatrix("matrix has non-finite entries")
    with warnings.catch_warnings():
        # exact singularity is reported through the condition estimate below
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(a, check_finite=False)
    rc = _rcond(lu, anorm, dtype)
    if rc <= tol_cond:
        cond = float("inf") if rc == 0 else 1 / rc
        raise SingularMatrix(f"matrix is singular to working precision (cond ~ {cond:.3e})", cond)
    # X a = b  <=>  a^T X^T = b^T
    return sla.lu_solve((lu, piv), np.asarray(b, dtype=dtype).T, trans=1, check_finite=False).T


def inv(a, tol_cond=None):
    a = _square(a)
    return solve_right(a, np.eye(a.shape[0], dtype=np.result_type(a, float)), tol_cond)


def hadamard(a, b):
    """Entrywise product of two equally shaped matrices."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return a * b


def symplectic_form(n):
    """The ``2n x 2n`` form ``[[0, I], [-I, 0]]`` in (q..., p...) ordering."""
    i = np.eye(n)
    o = np.zeros((n, n))
    return np.block([[o, i], [-i, o]])
