"""Command-line interface.

Exit codes: 0 success / positive result, 2 negative result (e.g. not
controllable), 1 error. JSON is the default output and every document carries
``schema_version`` and ``kind``; the matching schemas ship in
``graphcontrol/schemas``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import warnings

import numpy as np

from . import __version__
from .census import census, enumerate_connected
from .controllability import cone_theorem_check, is_controllable, walk_matrix
from .errors import Graph6Error, InvalidArgument, NumericError, UnsupportedSize, AmbiguousRank
from .exact import char_poly
from .graph import Graph, VertexSet, attach_path, cone, from_graph6, to_graph6
from .lie import verify_lemma1
from .qwalk import SynthesisConfig, check_unitary, haar_unitary, synthesize

SCHEMA_VERSION = 1

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_subset(text: str, n: int) -> VertexSet:
    text = text.strip()
    if text == "all":
        return VertexSet.all(n)
    if text in ("", "none"):
        return VertexSet(n, 0)
    try:
        members = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise UsageError(f"invalid subset {text!r}: expected comma-separated vertices or 'all'") from None
    return VertexSet.of(n, members)


def read_target(spec: str, n: int) -> np.ndarray:
    """Target unitary: 'identity', 'perm:i0,i1,...', 'haar:SEED', or a file path.

    File format: first line n, then n*n lines 're im' in row-major order.
    """
    if spec == "identity":
        return np.eye(n, dtype=complex)
    if spec.startswith("perm:"):
        image = [int(tok) for tok in spec[5:].split(",")]
        if sorted(image) != list(range(n)):
            raise UsageError(f"perm target must be a permutation of 0..{n - 1}")
        U = np.zeros((n, n), dtype=complex)
        for i, j in enumerate(image):
            U[j, i] = 1
        return U
    if spec.startswith("haar:"):
        return haar_unitary(n, np.random.default_rng(int(spec[5:])))
    with open(spec) as fh:
        tokens = [line.split() for line in fh if line.strip()]
    if not tokens or len(tokens[0]) != 1:
        raise UsageError("target file must start with a line holding n")
    size = int(tokens[0][0])
    if size != n:
        raise UsageError(f"target is {size}x{size} but the graph has {n} vertices")
    entries = tokens[1:]
    if len(entries) != n * n or any(len(e) != 2 for e in entries):
        raise UsageError(f"target file needs {n * n} lines of 're im'")
    U = np.array([complex(float(re), float(im)) for re, im in entries]).reshape(n, n)
    return check_unitary(U, atol_per_dim=1e-8)


def _doc(kind: str, body: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": kind, **body}


def _csv(rows: list[list], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(args, doc: dict, csv_text: str, plain_text: str):
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
    elif args.format == "csv":
        sys.stdout.write(csv_text)
    else:
        print(plain_text)


def _graph(args) -> Graph:
    return from_graph6(args.graph)


# -- commands ---------------------------------------------------------------


def cmd_check(args) -> int:
    X = _graph(args)
    S = parse_subset(args.subset, X.n)
    rep = is_controllable(X, S)
    body = rep.to_json()
    doc = _doc("controllability", body)
    fields = ["graph6", "subset", "controllable", "det", "rank", "gcd_degree", "fixing_automorphisms"]
    row = [body[f] if f != "subset" else " ".join(map(str, body[f])) for f in fields]
    plain = (
        f"{body['graph6']} S={body['subset']}: {'controllable' if rep.controllable else 'not controllable'} "
        f"(det={body['det']}, rank={rep.rank})"
    )
    _emit(args, doc, _csv([row], fields), plain)
    return EXIT_OK if rep.controllable else EXIT_NEGATIVE


def cmd_walk_matrix(args) -> int:
    X = _graph(args)
    S = parse_subset(args.subset, X.n)
    W = walk_matrix(X, S)
    doc = _doc(
        "walk_matrix",
        {
            "graph6": to_graph6(X),
            "subset": S.members,
            "matrix": [[str(x) for x in row] for row in W.matrix],
            "det": str(W.determinant),
            "rank": W.rank,
        },
    )
    plain = "\n".join(" ".join(str(x) for x in row) for row in W.matrix) + f"\ndet = {W.determinant}"
    csv_text = _csv(W.matrix, [f"c{j}" for j in range(X.n)])
    _emit(args, doc, csv_text, plain)
    return EXIT_OK if W.invertible else EXIT_NEGATIVE


def cmd_charpoly(args) -> int:
    X = _graph(args)
    p = char_poly(X.adjacency())
    doc = _doc("charpoly", {"graph6": to_graph6(X), "polynomial": str(p), "coefficients": [str(c) for c in p.coeffs]})
    _emit(args, doc, _csv([[k, c] for k, c in enumerate(p.coeffs)], ["power", "coefficient"]), str(p))
    return EXIT_OK


def cmd_lie_dim(args) -> int:
    X = _graph(args)
    S = parse_subset(args.subset, X.n)
    real_dim, skew_dim, holds = verify_lemma1(X, S, args.mode)
    n2 = X.n * X.n
    doc = _doc(
        "lie_dim",
        {
            "graph6": to_graph6(X),
            "subset": S.members,
            "mode": args.mode,
            "real_dim": real_dim,
            "skew_dim": skew_dim,
            "full": real_dim == n2 and skew_dim == n2,
            "lemma_holds": holds,
        },
    )
    plain = str(real_dim)
    csv_text = _csv([[real_dim, skew_dim, n2, holds]], ["real_dim", "skew_dim", "n_squared", "lemma_holds"])
    _emit(args, doc, csv_text, plain)
    if not holds:
        return EXIT_ERROR
    return EXIT_OK if doc["full"] else EXIT_NEGATIVE


def cmd_cone(args) -> int:
    X = _graph(args)
    S = parse_subset(args.subset, X.n)
    Y = cone(X, S)
    target = VertexSet.of(Y.n, [0])
    ctrl = walk_matrix(Y, target).invertible
    theorem = cone_theorem_check(X, S.members[0]) if len(S) == 1 else None
    doc = _doc(
        "cone",
        {"graph6": to_graph6(X), "subset": S.members, "cone_graph6": to_graph6(Y), "cone_controllable": ctrl,
         "theorem_holds": theorem},
    )
    _emit(args, doc, _csv([[to_graph6(Y), ctrl, theorem]], ["cone_graph6", "cone_controllable", "theorem_holds"]),
          f"{to_graph6(Y)} ({'controllable' if ctrl else 'not controllable'} at the new vertex)")
    if theorem is False:
        return EXIT_ERROR
    return EXIT_OK if ctrl else EXIT_NEGATIVE


def cmd_attach_path(args) -> int:
    X = _graph(args)
    S = parse_subset(args.subset, X.n)
    Y = attach_path(X, S, args.m)
    rep = is_controllable(Y, VertexSet.all(Y.n))
    doc = _doc(
        "attach_path",
        {"graph6": to_graph6(X), "subset": S.members, "m": args.m, "result_graph6": to_graph6(Y),
         "controllable": rep.controllable, "det": str(rep.det_certificate)},
    )
    _emit(args, doc, _csv([[to_graph6(Y), rep.controllable, rep.det_certificate]], ["graph6", "controllable", "det"]),
          f"{to_graph6(Y)} ({'controllable' if rep.controllable else 'not controllable'})")
    return EXIT_OK if rep.controllable else EXIT_NEGATIVE


def cmd_census(args) -> int:
    graphs = None
    n = args.n
    if args.from_file:
        with open(args.from_file) as fh:
            graphs = [from_graph6(line) for line in fh if line.strip()]
        if n is None:
            if not graphs:
                raise UsageError("empty graph file and no --n given")
            n = graphs[0].n
    if n is None:
        raise UsageError("--n is required unless --from-file is given")
    res = census(n, args.mode, graphs=graphs, allow_large=args.allow_large, jobs=args.jobs)
    if args.graphs_out:
        with open(args.graphs_out, "w") as fh:
            for X in res.controllable_graphs:
                fh.write(to_graph6(X) + "\n")
    doc = _doc("census", res.to_json())
    rows = [[n, res.connected_total, res.controllable_count, " ".join(k.split(",")), v]
            for k, v in doc["degree_sequences"].items()]
    plain = f"n={n}: {res.controllable_count} controllable of {res.connected_total} connected graphs"
    _emit(args, doc, _csv(rows, ["n", "connected", "controllable", "degree_sequence", "count"]), plain)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    for X in enumerate_connected(args.n, allow_large=args.allow_large, jobs=args.jobs):
        print(to_graph6(X))
    return EXIT_OK


def cmd_synthesize(args) -> int:
    X = _graph(args)
    S = parse_subset(args.subset, X.n)
    target = read_target(args.target, X.n)
    cfg = SynthesisConfig(
        K=args.K, restarts=args.restarts, max_iterations=args.max_iterations,
        target_infidelity=args.target_infidelity, rng_seed=args.seed,
    )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = synthesize(X, S, target, cfg)
    if not res.pair_controllable:
        print("warning: pair is not controllable; convergence is not expected", file=sys.stderr)
    rows = [[k, repr(s), repr(t)] for k, s, t in res.segments()]
    csv_text = _csv(rows, ["segment", "s", "t"])
    if args.schedule_csv:
        with open(args.schedule_csv, "w") as fh:
            fh.write(csv_text)
    doc = _doc("synthesis", {"graph6": to_graph6(X), "subset": S.members, "target": args.target, **res.to_json()})
    _emit(args, doc, csv_text, f"infidelity {res.infidelity:.3e} with K={res.K}")
    return EXIT_OK if res.reached_target else EXIT_NEGATIVE


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "plain"], default="json")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="graphcontrol", description="Controllability of quantum walks on graphs.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, graph=True, subset=False):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if graph:
            p.add_argument("--graph", required=True, help="graph6 string")
        if subset:
            p.add_argument("--subset", default="all", help="comma-separated 0-based vertices, or 'all'")
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "decide controllability of a pair", subset=True)
    add("walk-matrix", cmd_walk_matrix, "print the walk matrix", subset=True)
    add("charpoly", cmd_charpoly, "characteristic polynomial of the adjacency matrix")
    p = add("lie-dim", cmd_lie_dim, "Lie closure dimensions of {A, zz^T} and {iA, i zz^T}", subset=True)
    p.add_argument("--mode", choices=["exact", "float"], default="exact")
    add("cone", cmd_cone, "cone over a subset and controllability at the new vertex", subset=True)
    p = add("attach-path", cmd_attach_path, "attach a path joined to a subset", subset=True)
    p.add_argument("--m", type=int, default=1, help="number of path vertices")

    for name, func, text in [("census", cmd_census, "controllability census of connected graphs"),
                             ("enumerate", cmd_enumerate, "list connected graphs as graph6")]:
        p = add(name, func, text, graph=False)
        p.add_argument("--n", type=int, required=name == "enumerate")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--allow-large", action="store_true", help="permit n > 8")
        if name == "census":
            p.add_argument("--from-file", help="graph6 file replacing the built-in generator")
            p.add_argument("--mode", choices=["all-ones", "every-singleton"], default="all-ones")
            p.add_argument("--graphs-out", help="write controllable graphs as graph6 lines")

    p = add("synthesize", cmd_synthesize, "synthesize an alternating schedule for a target unitary", subset=True)
    p.add_argument("--target", required=True, help="identity | perm:i0,i1,... | haar:SEED | path to matrix file")
    p.add_argument("--K", type=int, default=6)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--max-iterations", type=int, default=2000)
    p.add_argument("--target-infidelity", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--schedule-csv", help="also write the schedule CSV here")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (Graph6Error, InvalidArgument, UnsupportedSize, UsageError, AmbiguousRank, NumericError, OSError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
