"""Command-line interface: ``gcalc VERB ...``.

Files are JSON in the formats of :mod:`gcalc.io`. Results go to ``-o``
(or stdout when omitted); human-readable summaries go to stdout, errors go
to stderr as JSON. Exit codes: 0 success, 2 invalid input, 3 numerical
failure.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import analysis, graph, io, rules, states
from .errors import GraphCalculusError, SingularMatrix


class CliError(Exception):
    def __init__(self, message, code=2, **extra):
        super().__init__(message)
        self.code = code
        self.extra = extra


def _tol():
    raw = os.environ.get("GCALC_TOL")
    if raw is None or raw == "":
        return None
    try:
        tol = float(raw)
    except ValueError:
        raise CliError(f"GCALC_TOL must be a decimal float, got {raw!r}") from None
    if not tol > 0:
        raise CliError(f"GCALC_TOL must be positive, got {raw!r}")
    return tol


def _emit(args, data, summary=None):
    """Write ``data`` (dict or text) to ``-o`` or stdout, then the summary."""
    text = data if isinstance(data, str) else json.dumps(data, indent=1) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        if summary:
            print(summary)
    else:
        sys.stdout.write(text)


def _load_graph(path):
    return io.read_graph(path, tol=_tol())


def _load_matrix(path, key="a"):
    data = io.read_json(path)
    if isinstance(data, dict):
        if key not in data:
            raise CliError(f"{path}: expected a matrix or an object with key {key!r}")
        data = data[key]
    return io.real_matrix_from_json(data, key)


def _resolve_nodes(g, spec):
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        if tok in g.labels:
            out.append(g.index(tok))
        else:
            try:
                out.append(g.index(int(tok)))
            except ValueError:
                out.append(g.index(tok))
    return out


def _summary(g):
    return f"{g.n}-mode state, approximation error tr(U)/2 = {graph.approximation_error(g):.10g}"


def cmd_new(args):
    kind = args.kind
    if kind == "vacuum":
        g = graph.vacuum(args.n)
    elif kind == "canonical":
        g = states.canonical_cluster(_load_matrix(args.a_file), args.r)
    elif kind == "alpha-family":
        g = states.cluster_family_alpha(_load_matrix(args.a_file), args.alpha)
    elif kind == "hgraph":
        g = states.hgraph_state(io.hgraph_from_dict(io.read_json(args.spec)))
    elif kind == "ghz":
        g = states.hgraph_state(states.ghz_hgraph(args.n, args.alpha, args.beta))
    elif kind == "offline":
        lmat = _load_matrix_complex(args.l_file)
        r = np.asarray(io.read_json(args.r_file), dtype=float)
        g = states.offline_squeezed_state(lmat, r)
    else:  # pragma: no cover - argparse restricts the choices
        raise CliError(f"unknown state kind {kind!r}")
    _emit(args, io.graph_to_dict(g), _summary(g) + "; valid (Z symmetric, Im Z positive definite)")


def _load_matrix_complex(path):
    data = io.read_json(path)
    if isinstance(data, dict):
        data = data.get("l", data.get("u", data.get("z")))
    return io.complex_from_json(data, "unitary")


def cmd_apply(args):
    g = _load_graph(args.state)
    script = io.read_json(args.script)
    if not isinstance(script, list):
        raise CliError("script must be a JSON array of operations")
    ops = []
    for i, d in enumerate(script):
        try:
            ops.append(rules.Operation.from_dict(d))
        except GraphCalculusError as exc:
            raise CliError(str(exc), index=i, error=type(exc).__name__) from None
    try:
        out = rules.run_script(g, ops, via=args.via)
    except rules.ScriptError as exc:
        code = 3 if isinstance(exc.cause, SingularMatrix) else 2
        raise CliError(str(exc.cause), code, index=exc.index, error=type(exc.cause).__name__) from None
    summary = _summary(out)
    if any(op.kind.startswith("measure") for op in ops):
        summary += "; measurement outcomes and displacements are not modelled"
    _emit(args, io.graph_to_dict(out), summary)


def cmd_cov(args):
    g = _load_graph(args.state)
    cov = graph.to_covariance(g)
    pure = cov.is_pure(_tol())
    data = {
        "n": g.n,
        "labels": list(g.labels),
        "sigma": cov.sigma.tolist(),
        "pure": bool(pure),
        "purity_residual": cov.purity_residual(),
        "det": float(np.linalg.det(cov.sigma)),
    }
    _emit(args, data, f"covariance of {g.n}-mode state, pure: {pure}")


def cmd_nullifiers(args):
    g = _load_graph(args.state)
    ns = graph.nullifier_set(g)
    cq, cp = graph.annihilator_coeffs(g)
    data = {
        "labels": list(g.labels),
        "m_left": io.complex_to_json(ns.m_left),
        "m_right": io.complex_to_json(ns.m_right),
        "covariance": graph.nullifier_covariance(g).tolist(),
        "annihilator_cq": io.complex_to_json(cq),
        "annihilator_cp": io.complex_to_json(cp),
    }
    _emit(args, data, f"nullifiers p - Z q of {g.n}-mode state")


def cmd_error(args):
    g = _load_graph(args.state)
    err = graph.approximation_error(g)
    data = {"error": err, "error_matrix": graph.ideal_error_matrix(g).tolist()}
    _emit(args, data, f"approximation error tr(U)/2 = {err:.10g}")


def cmd_closest(args):
    g = _load_graph(args.state)
    res = analysis.closest_cluster(g, max_iter=args.max_iter, seed=args.seed)
    _emit(args, res.to_dict(),
          f"closest cluster: error {res.error:.10g}, status {res.status} (local search, not certified)")


def cmd_entropy(args):
    g = _load_graph(args.state)
    keep = _resolve_nodes(g, args.keep)
    part = analysis.Partition(tuple(keep), g.n)
    s = analysis.entanglement_entropy(g, part, base=args.base)
    data = {
        "keep": [g.labels[k] for k in part.keep],
        "entropy": s,
        "base": args.base,
        "symplectic_eigenvalues": analysis.symplectic_eigenvalues(g, part).tolist(),
    }
    _emit(args, data, f"entanglement entropy = {s:.10g} {args.base}")


def cmd_hgraph(args):
    g = _load_graph(args.state)
    spec = states.hgraph_from_state(g, args.alpha)
    _emit(args, io.hgraph_to_dict(spec), f"H-graph of {g.n}-mode state at alpha = {spec.alpha}")


def cmd_export(args):
    g = _load_graph(args.state)
    _emit(args, io.to_dot(g, precision=args.precision, prune=args.prune),
          f"wrote DOT graph with {g.n} nodes")


def build_parser():
    p = argparse.ArgumentParser(prog="gcalc", description="Graph calculus for Gaussian pure states.")
    sub = p.add_subparsers(dest="verb", required=True)

    def out(sp):
        sp.add_argument("-o", "--output", help="output file (default: stdout)")

    new = sub.add_parser("new", help="create a state file")
    kinds = new.add_subparsers(dest="kind", required=True)
    k = kinds.add_parser("vacuum", help="n-mode vacuum")
    k.add_argument("n", type=int)
    out(k)
    k = kinds.add_parser("canonical", help="canonical cluster state Z = A + i e^(-2r) I")
    k.add_argument("a_file", help="JSON adjacency matrix")
    k.add_argument("--r", type=float, required=True)
    out(k)
    k = kinds.add_parser("alpha-family", help="Z = tanh(2a) A + i sech(2a) I")
    k.add_argument("a_file", help="JSON adjacency matrix")
    k.add_argument("--alpha", type=float, required=True)
    out(k)
    k = kinds.add_parser("hgraph", help="H-graph state from {alpha, g} file")
    k.add_argument("spec")
    out(k)
    k = kinds.add_parser("ghz", help="GHZ-type H-graph state, G = beta I - J")
    k.add_argument("n", type=int)
    k.add_argument("--alpha", type=float, required=True)
    k.add_argument("--beta", type=float, default=1.0)
    out(k)
    k = kinds.add_parser("offline", help="squeezed modes mixed by a unitary")
    k.add_argument("l_file", help="JSON complex unitary ([re, im] entries)")
    k.add_argument("r_file", help="JSON list of squeezing parameters")
    out(k)

    sp = sub.add_parser("apply", help="run an operation script on a state")
    sp.add_argument("state")
    sp.add_argument("script")
    sp.add_argument("--via", choices=["rules", "mobius"], default="rules")
    out(sp)

    for verb, help_ in [
        ("cov", "covariance matrix report"),
        ("nullifiers", "nullifier report"),
        ("error", "approximation error report"),
    ]:
        sp = sub.add_parser(verb, help=help_)
        sp.add_argument("state")
        out(sp)

    sp = sub.add_parser("closest", help="closest cluster state by local phase shifts")
    sp.add_argument("state")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-iter", type=int, default=analysis.MAX_ITER)
    out(sp)

    sp = sub.add_parser("entropy", help="entanglement entropy of a subset of nodes")
    sp.add_argument("state")
    sp.add_argument("--keep", required=True, help="comma-separated node labels, e.g. 0,2")
    sp.add_argument("--base", choices=["nats", "bits"], default="nats")
    out(sp)

    sp = sub.add_parser("hgraph", help="recover the H-graph of a purely imaginary state")
    sp.add_argument("state")
    sp.add_argument("--alpha", type=float, required=True)
    out(sp)

    sp = sub.add_parser("export", help="render a state as a DOT graph")
    sp.add_argument("state")
    sp.add_argument("--format", choices=["dot"], default="dot")
    sp.add_argument("--precision", type=int, default=4)
    sp.add_argument("--prune", type=float, default=1e-12)
    out(sp)
    return p


_COMMANDS = {
    "new": cmd_new,
    "apply": cmd_apply,
    "cov": cmd_cov,
    "nullifiers": cmd_nullifiers,
    "error": cmd_error,
    "closest": cmd_closest,
    "entropy": cmd_entropy,
    "hgraph": cmd_hgraph,
    "export": cmd_export,
}


def _fail(code, error, message, **extra):
    json.dump({"error": error, "message": message, **extra}, sys.stderr)
    sys.stderr.write("\n")
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        _COMMANDS[args.verb](args)
    except CliError as exc:
        extra = dict(exc.extra)
        error = extra.pop("error", "CliError")
        return _fail(exc.code, error, str(exc), **extra)
    except SingularMatrix as exc:
        return _fail(3, type(exc).__name__, str(exc))
    except GraphCalculusError as exc:
        return _fail(2, type(exc).__name__, str(exc))
    except OSError as exc:
        return _fail(2, type(exc).__name__, str(exc))
    except np.linalg.LinAlgError as exc:
        return _fail(3, type(exc).__name__, str(exc))
    except ValueError as exc:
        return _fail(2, type(exc).__name__, str(exc))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
