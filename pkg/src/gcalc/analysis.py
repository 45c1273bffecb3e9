"""Approximation-error optimisation and entanglement of graph states.

The approximation error of a graph ``Z`` as a CV cluster state is
``tr(U) / 2``. Local phase shifts ``theta`` change it; the optimiser
searches for the phases that make the state closest to an ideal cluster
state with adjacency ``Re Z'``.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionMismatch, InvalidPartition, NonFiniteParameter
from .graph import approximation_error, to_covariance

TOL_GRAD = 1e-10
TOL_PSD = 1e-9
MAX_ITER = 500
GRID_CAP = 8


def wrap_phases(theta):
    """Representative of each angle in ``(-pi, pi]``."""
    theta = np.asarray(theta, dtype=float)
    return np.pi - np.mod(np.pi - theta, 2 * np.pi)


def _phase_vector(g, theta):
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    if theta.shape != (g.n,):
        raise DimensionMismatch(f"{g.n} modes but {theta.size} phases")
    if not np.all(np.isfinite(theta)):
        raise NonFiniteParameter("phases must be finite")
    return theta


def apply_phases(g, theta):
    """Phase shift ``theta_j`` on every node ``j`` at once.

    ``Z' = (-sin T + cos T Z)(cos T + sin T Z)^-1`` with ``T = diag(theta)``.
    """
    theta = _phase_vector(g, theta)
    c, s = np.cos(theta), np.sin(theta)
    z = g.z
    num = -np.diag(s) + c[:, None] * z
    den = np.diag(c) + s[:, None] * z
    return g.replace(linalg.solve_right(den, num))


def error_gradient(g):
    """Gradient of ``tr U'`` under phase shifts, at ``theta = 0``: ``-diag Im(Z^2)``.

    This is twice the gradient of the approximation error.
    """
    return -np.diag(g.z @ g.z).imag.copy()


def minimality_matrix(g):
    """``Im[(I + Z^2) o Z]``, the Hessian of the error ``tr(U') / 2`` at ``theta = 0``."""
    z = g.z
    return linalg.symmetrize(linalg.hadamard(np.eye(g.n) + z @ z, z).imag)


def error_hessian(g):
    """Hessian of ``tr U'`` under phase shifts at ``theta = 0``: ``2 Im[(I + Z^2) o Z]``."""
    return 2 * minimality_matrix(g)


def is_extremum(g, tol=1e-10):
    """Whether ``theta = 0`` is stationary, i.e. rows of ``U`` and ``V`` are orthogonal."""
    return bool(np.max(np.abs(np.diag(g.u @ g.v))) < tol)


def is_local_min(g, tol=1e-10, tol_psd=TOL_PSD):
    """Classify ``theta = 0`` as ``"strict"``, ``"semidefinite"`` or ``"no"`` minimum."""
    if not is_extremum(g, tol):
        return "no"
    lam = linalg.min_eigenvalue(minimality_matrix(g))
    if lam > tol_psd:
        return "strict"
    if lam >= -tol_psd:
        return "semidefinite"
    return "no"


def squeezing_diagnostics(g):
    """``max |diag(U + V U^-1 V - U^-1)|`` and ``max |diag(V U^-1)|``."""
    u_inv = linalg.symmetrize(linalg.inv(g.u))
    v = g.v
    d1 = np.diag(g.u + v @ u_inv @ v - u_inv)
    d2 = np.diag(v @ u_inv)
    return float(np.max(np.abs(d1))), float(np.max(np.abs(d2)))


def squeezing_efficient(g, tol=1e-9):
    """Whether every node's squeezing goes into correlations between its quadratures."""
    d1, d2 = squeezing_diagnostics(g)
    return d1 < tol and d2 < tol


@dataclass(frozen=True)
class ClosestClusterResult:
    """Outcome of :func:`closest_cluster`.

    ``gradient_norm`` and ``hessian_min_eig`` refer to the error ``tr(U') / 2``
    at the returned phases. ``status`` is ``"minimum"``, ``"flat-manifold"``
    or ``"max-iter"``; none of them certifies a global minimum.
    """

    theta: np.ndarray
    z_opt: object
    cluster_graph: np.ndarray
    error: float
    gradient_norm: float
    hessian_min_eig: float
    status: str

    def to_dict(self):
        return {
            "error": self.error,
            "theta": self.theta.tolist(),
            "cluster_graph": self.cluster_graph.tolist(),
            "status": self.status,
            "gradient_norm": self.gradient_norm,
            "hessian_min_eig": self.hessian_min_eig,
        }


def _objective(g, theta):
    zp = apply_phases(g, theta)
    return approximation_error(zp), 0.5 * error_gradient(zp), zp


def _descend(g, theta, tol_grad, max_iter):
    """Barzilai-Borwein gradient descent with an Armijo backtracking safeguard."""
    f, grad, _ = _objective(g, theta)
    step = 1.0
    prev = None
    # f cannot resolve decreases below rounding, so allow that much slack
    slack = 1e-15 * max(1.0, abs(f))
    for _ in range(max_iter):
        gnorm2 = float(grad @ grad)
        if np.sqrt(gnorm2) < tol_grad:
            break
        if prev is not None:
            s = theta - prev[0]
            y = grad - prev[1]
            sy = float(s @ y)
            step = float(s @ s) / sy if sy > 0 else 1.0
            step = min(max(step, 1e-8), 1e3)
        eta = step
        for _ in range(40):
            cand = theta - eta * grad
            f_new, g_new, _ = _objective(g, cand)
            if f_new <= f - 1e-4 * eta * gnorm2 + slack:
                break
            eta *= 0.5
        else:
            # no decrease representable at this precision
            break
        prev = (theta, grad)
        theta, f, grad = cand, f_new, g_new
    return theta


def _reduce(theta):
    # tr U' is pi-periodic in every phase, so report angles in (-pi/2, pi/2]
    return np.pi / 2 - np.mod(np.pi / 2 - theta, np.pi)


def _start_points(n, cap, n_restarts, rng):
    if n <= cap:
        # {0, +-pi/2, pi} collapses to {0, -pi/2} by pi-periodicity
        grid = np.array(np.meshgrid(*[[0.0, -np.pi / 2]] * n, indexing="ij"))
        return list(grid.reshape(n, -1).T)
    starts = [np.zeros(n), np.full(n, -np.pi / 2)]
    starts += list(rng.uniform(-np.pi / 2, np.pi / 2, size=(n_restarts, n)))
    return starts


def _diagnose(g, theta):
    f, grad, zp = _objective(g, theta)
    lam = linalg.min_eigenvalue(minimality_matrix(zp))
    return f, float(np.linalg.norm(grad)), lam, zp


def closest_cluster(g, tol_grad=TOL_GRAD, tol_psd=TOL_PSD, max_iter=MAX_ITER, *, cap=GRID_CAP,
                    n_restarts=64, seed=0, max_escapes=5):
    """Phases minimising the approximation error ``tr(U')/2``.

    Runs gradient descent from every pattern of multiples of pi/2 when
    ``n <= cap`` and from ``n_restarts`` seeded random phases otherwise. The
    best end point is kept (ties go to the lexicographically smallest
    phases). A saddle is left along its most negative curvature direction
    up to ``max_escapes`` times.
    """
    rng = np.random.default_rng(seed)
    ends = []
    for start in _start_points(g.n, cap, n_restarts, rng):
        theta = _reduce(_descend(g, start, tol_grad, max_iter))
        ends.append((_objective(g, theta)[0], theta))
    best_f = min(f for f, _ in ends)
    tie = 1e-12 * max(1.0, abs(best_f))
    theta = min((t for f, t in ends if f <= best_f + tie), key=tuple)

    f, gnorm, lam, zp = _diagnose(g, theta)
    for _ in range(max_escapes):
        if gnorm >= tol_grad or lam >= -tol_psd:
            break
        w, q = np.linalg.eigh(minimality_matrix(zp))
        tried = []
        for sign in (1.0, -1.0):
            t = _reduce(_descend(g, theta + sign * 0.1 * q[:, 0], tol_grad, max_iter))
            tried.append((_objective(g, t)[0], tuple(t), t))
        f_new, _, t_new = min(tried)
        if f_new >= f:
            break
        theta = t_new
        f, gnorm, lam, zp = _diagnose(g, theta)

    if gnorm < tol_grad and lam > tol_psd:
        status = "minimum"
    elif gnorm < tol_grad and lam >= -tol_psd:
        status = "flat-manifold"
    else:
        status = "max-iter"
    return ClosestClusterResult(
        theta=theta,
        z_opt=zp,
        cluster_graph=np.array(zp.v),
        error=approximation_error(zp),
        gradient_norm=gnorm,
        hessian_min_eig=lam,
        status=status,
    )


@dataclass(frozen=True)
class Partition:
    """Sorted, non-empty, proper subset ``keep`` of an ``n``-mode system."""

    keep: tuple
    n: int

    def __post_init__(self):
        try:
            keep = [int(k) for k in self.keep]
        except (TypeError, ValueError):
            raise InvalidPartition(f"partition indices must be integers: {self.keep!r}") from None
        if len(set(keep)) != len(keep):
            raise InvalidPartition(f"repeated index in {keep}")
        if any(not 0 <= k < self.n for k in keep):
            raise InvalidPartition(f"index out of range for {self.n} modes in {keep}")
        if not 0 < len(keep) < self.n:
            raise InvalidPartition("partition must be a non-empty proper subset")
        object.__setattr__(self, "keep", tuple(sorted(keep)))

    def complement(self):
        return Partition(tuple(j for j in range(self.n) if j not in self.keep), self.n)


def _partition(g, part):
    if isinstance(part, Partition):
        if part.n != g.n:
            raise InvalidPartition(f"partition of {part.n} modes used on {g.n}-mode graph")
        return part
    try:
        keep = [g.index(k) for k in part]
    except Exception as exc:
        raise InvalidPartition(str(exc)) from None
    return Partition(tuple(keep), g.n)


def symplectic_eigenvalues(g, part, clamp_tol=1e-9):
    """Symplectic eigenvalues of the reduced state on ``part.keep``, ascending.

    Values within ``clamp_tol`` of 1/2 are returned as exactly 1/2.
    """
    part = _partition(g, part)
    keep = list(part.keep)
    m = len(keep)
    idx = keep + [k + g.n for k in keep]
    sigma = to_covariance(g).sigma[np.ix_(idx, idx)]
    chol = np.linalg.cholesky(sigma)
    # i L^T Omega L is Hermitian with eigenvalues +-sigma_j
    herm = 1j * chol.T @ linalg.symplectic_form(m) @ chol
    w = np.linalg.eigvalsh(herm)[m:]
    w = np.where(np.abs(w - 0.5) <= clamp_tol, 0.5, w)
    return np.sort(w)


def _h(sigma):
    if sigma <= 0.5:
        return 0.0
    a, b = sigma + 0.5, sigma - 0.5
    return a * np.log(a) - b * np.log(b)


def entanglement_entropy(g, part, base="nats"):
    """Von Neumann entropy of the reduced state, in nats or bits."""
    if base not in ("nats", "bits"):
        raise ValueError(f"base must be 'nats' or 'bits', got {base!r}")
    s = float(sum(_h(x) for x in symplectic_eigenvalues(g, part)))
    return s / np.log(2) if base == "bits" else s
