"""Closed-form graph updates for elementary Gaussian operations.

For an operation on one node the graph splits into the node's self-loop
``t``, its edge vector ``r`` and the rest ``W``. A single-mode symplectic
``[[a, b], [c, d]]`` maps them to::

    t' = (c + d t) / (a + b t)
    r' = r / (a + b t)
    W' = W - b r r^T / (a + b t)

Every rule here agrees with the generic Mobius map of the embedded
symplectic; the test suite checks that on random graphs.
"""

from dataclasses import dataclass

import numpy as np

from . import symplectic as sp
from .errors import (
    DimensionMismatch,
    GraphCalculusError,
    LastNode,
    SameNode,
    SingularMatrix,
    UnsupportedOperation,
)
from .linalg import TOL_COND


def apply_local(g, node, s2, tol_cond=None):
    """Apply the single-mode symplectic ``s2`` (a :class:`Symplectic` or 2x2 array) to ``node``."""
    s2 = s2.s if isinstance(s2, sp.Symplectic) else np.asarray(s2, dtype=float)
    if s2.shape != (2, 2):
        raise DimensionMismatch(f"local operation must be 2 x 2, got {s2.shape}")
    (a, b), (c, d) = s2
    k = g.index(node)
    z = np.array(g.z)
    t = z[k, k]
    den = a + b * t
    tol_cond = TOL_COND if tol_cond is None else tol_cond
    if abs(den) <= tol_cond * (abs(a) + abs(b) * abs(t)):
        raise SingularMatrix(f"a + b t vanishes on node {g.labels[k]!r}")
    if b != 0:
        r = z[:, k].copy()
        r[k] = 0
        z -= (b / den) * np.outer(r, r)
    z[k, :] /= den
    z[:, k] /= den
    # z[k, k] was divided twice above; set it directly
    z[k, k] = (c + d * t) / den
    return g.replace(z)


def apply_shear(g, node, weight):
    return apply_local(g, node, sp.shear(weight))


def apply_squeeze(g, node, r):
    return apply_local(g, node, sp.squeeze(r))


def apply_phase(g, node, theta):
    return apply_local(g, node, sp.phase(theta))


def apply_fourier(g, node):
    return apply_local(g, node, sp.fourier())


def apply_inverse_fourier(g, node):
    return apply_local(g, node, sp.inverse_fourier())


def _pair(g, node_i, node_j):
    i, j = g.index(node_i), g.index(node_j)
    if i == j:
        raise SameNode(f"two-mode operation needs distinct nodes, got {node_i!r} twice")
    return i, j


def apply_cz(g, node_i, node_j, weight=1.0):
    """Add ``weight`` to the edge between the two nodes."""
    i, j = _pair(g, node_i, node_j)
    weight = sp._finite(weight, "CZ weight")
    z = np.array(g.z)
    z[i, j] += weight
    z[j, i] = z[i, j]
    return g.replace(z)


def apply_beamsplitter(g, node_i, node_j, theta):
    """Rotate the pair block ``T`` to ``R T R^T`` and the edges to it by ``R^T``."""
    i, j = _pair(g, node_i, node_j)
    theta = sp._finite(theta, "beamsplitter angle")
    c, s = np.cos(theta), np.sin(theta)
    rot = np.array([[c, -s], [s, c]])
    z = np.array(g.z)
    idx = [i, j]
    z[:, idx] = z[:, idx] @ rot.T
    z[idx, :] = rot @ z[idx, :]
    return g.replace(z)


def measure_q(g, node):
    """Homodyne ``q`` measurement: delete the node and its links."""
    k = g.index(node)
    if g.n == 1:
        raise LastNode("cannot measure the only remaining node")
    keep = [j for j in range(g.n) if j != k]
    labels = [g.labels[j] for j in keep]
    return type(g)(g.z[np.ix_(keep, keep)], labels)


def measure_p(g, node):
    """Homodyne ``p`` measurement: inverse Fourier, i.e. ``phase(pi/2)``, then delete."""
    return measure_quadrature(g, node, np.pi / 2)


def measure_quadrature(g, node, theta):
    """Measure ``q cos(theta) + p sin(theta)``: ``phase(theta)`` then delete."""
    if g.n == 1:
        g.index(node)
        raise LastNode("cannot measure the only remaining node")
    return measure_q(apply_phase(g, node, theta), node)


# op name -> (number of nodes, parameter key, default)
_KINDS = {
    "shear": (1, "g", None),
    "squeeze": (1, "r", None),
    "phase": (1, "theta", None),
    "fourier": (1, None, None),
    "inverse_fourier": (1, None, None),
    "cz": (2, "weight", 1.0),
    "beamsplitter": (2, "theta", None),
    "measure_q": (1, None, None),
    "measure_p": (1, None, None),
    "measure_quadrature": (1, "theta", None),
    "displacement": (1, None, None),
}

_NON_GAUSSIAN = {"photon_count", "photon_counting", "measure_n", "photon_number"}

# accepted spellings of each parameter in script files
_PARAM_ALIASES = {"g": ("g", "weight"), "r": ("r",), "theta": ("theta",), "weight": ("weight", "g")}


@dataclass(frozen=True)
class Operation:
    """One step of an operation script.

    ``nodes`` holds label references; integers are taken as positions.
    """

    kind: str
    nodes: tuple
    param: float | None = None

    def __post_init__(self):
        if self.kind in _NON_GAUSSIAN:
            raise UnsupportedOperation(f"{self.kind!r} is not a Gaussian operation")
        if self.kind not in _KINDS:
            raise UnsupportedOperation(f"unknown operation {self.kind!r}")
        arity, key, default = _KINDS[self.kind]
        if len(self.nodes) != arity:
            raise DimensionMismatch(f"{self.kind} takes {arity} node(s), got {len(self.nodes)}")
        if key is None:
            object.__setattr__(self, "param", None)
        elif self.param is None:
            if default is None:
                raise GraphCalculusError(f"{self.kind} needs parameter {key!r}")
            object.__setattr__(self, "param", default)
        else:
            object.__setattr__(self, "param", sp._finite(self.param, key))

    @classmethod
    def from_dict(cls, d):
        """Parse ``{"op": ..., "node"/"nodes": ..., "theta"/"weight"/"g"/"r": ...}``."""
        if not isinstance(d, dict) or "op" not in d:
            raise GraphCalculusError(f"operation must be an object with an 'op' field, got {d!r}")
        kind = d["op"]
        if kind in _NON_GAUSSIAN:
            raise UnsupportedOperation(f"{kind!r} is not a Gaussian operation")
        if kind not in _KINDS:
            raise UnsupportedOperation(f"unknown operation {kind!r}")
        if "nodes" in d:
            nodes = d["nodes"]
            nodes = tuple(nodes) if isinstance(nodes, (list, tuple)) else (nodes,)
        elif "node" in d:
            nodes = (d["node"],)
        else:
            raise GraphCalculusError(f"{kind} needs 'node' or 'nodes'")
        key = _KINDS[kind][1]
        param = None
        if key is not None:
            for alias in _PARAM_ALIASES[key]:
                if alias in d:
                    param = d[alias]
                    break
        return cls(kind, nodes, param)

    def to_dict(self):
        d = {"op": self.kind}
        if len(self.nodes) == 1:
            d["node"] = self.nodes[0]
        else:
            d["nodes"] = list(self.nodes)
        key = _KINDS[self.kind][1]
        if key is not None:
            d[key] = self.param
        return d

    def symplectic(self):
        """The operation's own 1- or 2-mode symplectic; ``None`` for pass-through kinds."""
        k = self.kind
        if k in ("shear", "squeeze", "phase", "fourier", "inverse_fourier"):
            return sp.local_symplectic(k, self.param)
        if k in ("cz", "beamsplitter"):
            return sp.two_mode_symplectic(k, self.param)
        if k == "measure_p":
            return sp.phase(np.pi / 2)
        if k == "measure_quadrature":
            return sp.phase(self.param)
        return None


def _via_mobius(g, op):
    nodes = [g.index(x) for x in op.nodes]
    if len(nodes) == 2 and nodes[0] == nodes[1]:
        raise SameNode(f"two-mode operation needs distinct nodes, got {op.nodes[0]!r} twice")
    if op.kind.startswith("measure") and g.n == 1:
        raise LastNode("cannot measure the only remaining node")
    s = op.symplectic()
    if s is not None:
        g = sp.mobius(sp.embed(s, nodes, g.n), g)
    if op.kind.startswith("measure"):
        g = measure_q(g, nodes[0])
    return g


def apply_operation(g, op, via="rules"):
    """Apply one :class:`Operation` (or its dict form).

    ``via="mobius"`` routes through the generic symplectic path instead of
    the closed-form rules. Displacements leave the graph unchanged.
    """
    if isinstance(op, dict):
        op = Operation.from_dict(op)
    if via == "mobius":
        return _via_mobius(g, op)
    if via != "rules":
        raise ValueError(f"via must be 'rules' or 'mobius', got {via!r}")
    k = op.kind
    nodes = op.nodes
    if k == "displacement":
        g.index(nodes[0])
        return g
    if k in ("shear", "squeeze", "phase", "fourier", "inverse_fourier"):
        return apply_local(g, nodes[0], op.symplectic())
    if k == "cz":
        return apply_cz(g, nodes[0], nodes[1], op.param)
    if k == "beamsplitter":
        return apply_beamsplitter(g, nodes[0], nodes[1], op.param)
    if k == "measure_q":
        return measure_q(g, nodes[0])
    if k == "measure_p":
        return measure_p(g, nodes[0])
    return measure_quadrature(g, nodes[0], op.param)


class ScriptError(GraphCalculusError):
    """Failure at a given step of a script; wraps the original error."""

    def __init__(self, index, cause):
        super().__init__(f"step {index}: {cause}")
        self.index = index
        self.cause = cause


def run_script(g, ops, via="rules"):
    """Apply a sequence of operations in order.

    Raises
    ------
    ScriptError
        Carrying the index of the failing step and the underlying error.
    """
    for i, op in enumerate(ops):
        try:
            g = apply_operation(g, op, via=via)
        except GraphCalculusError as exc:
            raise ScriptError(i, exc) from exc
    return g
