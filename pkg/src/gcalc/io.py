"""JSON file formats and DOT export.

Complex matrices are written as nested lists of ``[re, im]`` pairs. Python's
float ``repr`` is the shortest round-trip decimal, so writing and reading a
file is lossless.
"""

import json

import numpy as np

from .errors import DimensionMismatch, GraphCalculusError
from .graph import GaussianGraph
from .states import HGraphSpec


class FormatError(GraphCalculusError):
    """Malformed input file."""


def complex_to_json(m):
    m = np.asarray(m, dtype=complex)
    return [[[float(x.real), float(x.imag)] for x in row] for row in m]


def complex_from_json(data, name="matrix"):
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError):
        raise FormatError(f"{name} must be a nested list of [re, im] pairs") from None
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise FormatError(f"{name} must have shape (N, N, 2), got {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def graph_to_dict(g):
    # stored Z is exactly symmetric, so the written matrix is too
    return {"n": g.n, "labels": list(g.labels), "z": complex_to_json(g.z)}


def graph_from_dict(d, tol=None):
    if not isinstance(d, dict) or "z" not in d:
        raise FormatError("graph file must be an object with a 'z' field")
    z = complex_from_json(d["z"], "z")
    if "n" in d and int(d["n"]) != z.shape[0]:
        raise DimensionMismatch(f"'n' is {d['n']} but 'z' has {z.shape[0]} rows")
    return GaussianGraph(z, d.get("labels"), tol=tol)


def hgraph_to_dict(spec):
    return {"alpha": spec.alpha, "g": np.asarray(spec.g).tolist()}


def hgraph_from_dict(d):
    if not isinstance(d, dict) or "g" not in d or "alpha" not in d:
        raise FormatError("H-graph file must be an object with 'alpha' and 'g'")
    return HGraphSpec(np.asarray(d["g"], dtype=float), d["alpha"])


def real_matrix_from_json(data, name="matrix"):
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError):
        raise FormatError(f"{name} must be a nested list of numbers") from None
    if arr.ndim != 2:
        raise FormatError(f"{name} must be two-dimensional, got shape {arr.shape}")
    return arr


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def write_json(data, path):
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")


def read_graph(path, tol=None):
    return graph_from_dict(read_json(path), tol=tol)


def write_graph(g, path):
    write_json(graph_to_dict(g), path)


def format_complex(x, precision=4):
    """``a+bi`` with ``precision`` significant digits, dropping zero parts."""
    re, im = float(np.real(x)), float(np.imag(x))
    fmt = f"#.{precision}g"

    def num(v):
        s = format(v, fmt)
        return s.rstrip(".") if "e" not in s else s

    if im == 0:
        return num(re)
    if re == 0:
        return num(im) + "i"
    return num(re) + ("+" if im >= 0 else "-") + num(abs(im)) + "i"


def to_dot(g, precision=4, prune=1e-12, name="G"):
    """Undirected DOT rendering; self-loops carry diagonal entries."""
    z = g.z
    lines = [f"graph {name} {{"]
    for label in g.labels:
        lines.append(f'  "{label}";')
    for j in range(g.n):
        for k in range(j, g.n):
            w = z[j, k]
            if abs(w) <= prune:
                continue
            a, b = g.labels[j], g.labels[k]
            lines.append(f'  "{a}" -- "{b}" [label="{format_complex(w, precision)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "FormatError",
    "complex_to_json",
    "complex_from_json",
    "graph_to_dict",
    "graph_from_dict",
    "hgraph_to_dict",
    "hgraph_from_dict",
    "real_matrix_from_json",
    "read_json",
    "write_json",
    "read_graph",
    "write_graph",
    "format_complex",
    "to_dot",
]
