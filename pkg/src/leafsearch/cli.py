"""Command-line interface.

Every command prints JSON lines on stdout (``--pretty`` for a readable
rendering). Exit codes: 0 success, 1 negative answer under ``--strict``,
2 usage or input error, 3 counterexample or failed gadget equivalence.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Iterable
from pathlib import Path
from typing import Any

from leafsearch.errors import LeafSearchError
from leafsearch.families import BUILTIN
from leafsearch.gadgets import (
    GADGET_CAP,
    assignment_witness,
    bfs_f_gadget,
    dfs_f_gadget,
    parse_cnf,
    sat_f_gadget,
    satisfying_assignment,
    verify_gadget,
)
from leafsearch.graph import (
    Graph,
    as_ordering,
    bipartition,
    components,
    cut_vertices,
    dump_edge_list,
    ecc_diam_rad,
    is_chordal,
    is_simplicial,
    read_graph,
    split_partition,
)
from leafsearch.oracle import THEOREMS, certify, graph_corpus, leaf_sets
from leafsearch.recognize import LeafQuery, query, replay_witness
from leafsearch.search import (
    ALL_KINDS,
    DEFAULT_CAP,
    Arbitrary,
    PlusRho,
    enumerate_orderings,
    is_search_ordering,
    run_search,
)
from leafsearch.trees import build_tree, classify_leaf

OK, NEGATIVE, USAGE, COUNTEREXAMPLE = 0, 1, 2, 3

KIND_CHOICES = [k.value for k in ALL_KINDS]


class _Out:
    def __init__(self, pretty: bool, stream=None):
        self.pretty = pretty
        self.stream = stream or sys.stdout

    def emit(self, record: dict[str, Any]) -> None:
        if not self.pretty:
            print(json.dumps(record, sort_keys=False), file=self.stream)
            return
        for key, value in record.items():
            if isinstance(value, list) and all(isinstance(x, str) for x in value):
                value = ",".join(value)
            elif isinstance(value, bool):
                value = "yes" if value else "no"
            elif isinstance(value, (dict, list)):
                value = json.dumps(value)
            print(f"{key}: {value}", file=self.stream)
        print(file=self.stream)


def load_graph_arg(spec: str) -> Graph:
    """A graph file path, or the name of a built-in graph."""
    path = Path(spec)
    if path.exists():
        return read_graph(path)
    if spec.lower() in BUILTIN:
        return BUILTIN[spec.lower()]()
    raise LeafSearchError(
        f"no graph file {spec!r} and no built-in graph of that name "
        f"(built-ins: {', '.join(BUILTIN)})"
    )


def _finite(x: float) -> int | None:
    return None if x == float("inf") else int(x)


# -- commands -----------------------------------------------------------------------


def cmd_classify(args, out: _Out) -> int:
    g = load_graph_arg(args.graph)
    connected = g.n > 0 and len(components(g)) == 1
    rec: dict[str, Any] = {"n": g.n, "m": g.m, "connected": connected}
    rec["chordal"] = is_chordal(g)
    rec["bipartite"] = bipartition(g) is not None
    rec["split"] = split_partition(g) is not None
    rec["simplicial"] = [g.names[v] for v in range(g.n) if is_simplicial(g, v)]
    if connected:
        rec["cut_vertices"] = sorted(g.names[v] for v in cut_vertices(g))
        metrics = ecc_diam_rad(g)
        rec["diameter"] = _finite(metrics.diameter)
        rec["radius"] = _finite(metrics.radius)
        rec["center"] = g.names[metrics.center]
    out.emit(rec)
    return OK


def cmd_search(args, out: _Out) -> int:
    g = load_graph_arg(args.graph)
    if args.all:
        for sigma in enumerate_orderings(g, args.search, args.limit, cap=args.cap):
            out.emit({"search": args.search, "ordering": sigma.names(g)})
        return OK
    if args.rho:
        tiebreak = PlusRho(as_ordering(g, args.rho))
    elif args.seed is not None:
        tiebreak = Arbitrary(args.seed)
    else:
        tiebreak = None
    sigma = run_search(g, args.search, tiebreak)
    out.emit({"search": args.search, "ordering": sigma.names(g)})
    return OK


def cmd_tree(args, out: _Out) -> int:
    g = load_graph_arg(args.graph)
    if args.ordering:
        sigma = as_ordering(g, args.ordering)
    else:
        rho = PlusRho(as_ordering(g, args.rho)) if args.rho else None
        sigma = run_search(g, args.search, rho)
    t = build_tree(g, sigma, args.tree)
    if args.format == "text":
        out.stream.write(t.format(g))
        return OK
    roles = {g.names[v]: classify_leaf(t, v).value for v in range(g.n)}
    out.emit(
        {
            "tree": args.tree,
            "ordering": sigma.names(g),
            "root": g.names[t.root],
            "parent": {g.names[c]: g.names[p] for c, p in t.edges()},
            "roles": roles,
        }
    )
    return OK


def _vertices(g: Graph, names: Iterable[str] | None) -> list[int]:
    if not names:
        return list(range(g.n))
    return [g.vertex(name) for name in names]


def cmd_leaf(args, out: _Out) -> int:
    g = load_graph_arg(args.graph)
    negative = False
    for v in _vertices(g, args.vertex):
        q = LeafQuery.make(args.search, args.tree, args.kind, v)
        verdict = query(g, q, cap=args.cap)
        rec = verdict.record(g, q)
        if not args.witness:
            rec.pop("witness")
        out.emit(rec)
        negative |= not verdict.answer
    return NEGATIVE if args.strict and negative else OK


def cmd_check(args, out: _Out) -> int:
    g = load_graph_arg(args.graph)
    sigma = as_ordering(g, args.ordering)
    valid = is_search_ordering(g, args.search, sigma)
    rec: dict[str, Any] = {"search": args.search, "ordering": sigma.names(g), "valid": valid}
    ok = valid
    if args.vertex is not None:
        v = g.vertex(args.vertex)
        q = LeafQuery.make(args.search, args.tree, args.kind, v)
        role_ok = replay_witness(g, q, sigma)
        rec.update(vertex=g.names[v], tree=args.tree, kind=args.kind, role=role_ok)
        if valid:
            rec["actual_role"] = classify_leaf(build_tree(g, sigma, args.tree), v).value
        ok = ok and role_ok
    out.emit(rec)
    return NEGATIVE if args.strict and not ok else OK


def _build_gadget(args):
    if args.gadget == "sat-f":
        return sat_f_gadget(parse_cnf(Path(args.input).read_text(encoding="utf-8")))
    g = load_graph_arg(args.input)
    if args.gadget == "dfs-f":
        return dfs_f_gadget(g)
    if args.r is None or args.v is None:
        raise LeafSearchError("bfs-f needs --r and --v")
    return bfs_f_gadget(g, g.vertex(args.r), g.vertex(args.v))


def cmd_gadget(args, out: _Out) -> int:
    inst = _build_gadget(args)
    if args.action == "verify":
        kinds = [args.search] if args.search else None
        rep = verify_gadget(inst, kinds=kinds, cap=args.cap)
        out.emit(rep.record())
        if not (rep.equivalent and rep.class_ok):
            return COUNTEREXAMPLE
        return NEGATIVE if args.strict and not rep.target_answer else OK
    text = dump_edge_list(inst.target)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.stream.write(text)
    rec = {
        "gadget": inst.name,
        "n": inst.target.n,
        "m": inst.target.m,
        "query_vertex": inst.target.names[inst.query_vertex],
        "search": inst.query.kind.value,
        "tree": inst.query.tree.value,
        "kind": inst.query.leaf.value,
    }
    if inst.name == "sat-f":
        assignment = satisfying_assignment(inst.source)
        if assignment is not None:
            rec["assignment_witness"] = assignment_witness(inst, assignment).names(inst.target)
    if args.out:
        rec["out"] = args.out
        out.emit(rec)
    else:
        print(json.dumps(rec), file=sys.stderr)
    return OK


def cmd_oracle(args, out: _Out) -> int:
    if args.action == "sets":
        g = load_graph_arg(args.graph)
        kinds = [args.search] if args.search else KIND_CHOICES
        for kind in kinds:
            out.emit(leaf_sets(g, kind, cap=args.cap).record(g))
        return OK
    if args.theorem is None:
        raise LeafSearchError("oracle certify needs --theorem")
    corpus = graph_corpus(
        args.nmax,
        args.mode,
        n_min=args.nmin,
        graph_class=args.graph_class,
        seed=args.seed,
        count=args.count,
    )
    rep = certify(args.theorem, corpus)
    out.emit(rep.record())
    return OK if rep.passed else COUNTEREXAMPLE


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument(
        "--strict", action="store_true", help="exit 1 when a yes/no answer is negative"
    )
    common.add_argument(
        "--cap",
        type=int,
        default=DEFAULT_CAP,
        help="vertex limit for exhaustive procedures (default %(default)s)",
    )

    parser = argparse.ArgumentParser(
        prog="leafsearch",
        description="Leaf recognition in graph search trees (GS, BFS, DFS, LBFS, LDFS, MCS, MNS).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_arg(p):
        p.add_argument("--graph", required=True, help="edge-list/DIMACS file or built-in name")

    def search_arg(p, required=True):
        p.add_argument("--search", choices=KIND_CHOICES, required=required, default=None)

    p = sub.add_parser("classify", parents=[common], help="graph class and metric summary")
    graph_arg(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("search", parents=[common], help="run or enumerate a graph search")
    graph_arg(p)
    search_arg(p)
    tb = p.add_mutually_exclusive_group()
    tb.add_argument("--rho", help="tie-break ordering for the +-search (comma-separated)")
    tb.add_argument("--seed", type=int, help="random tie-breaking with this seed")
    tb.add_argument("--all", action="store_true", help="enumerate every ordering")
    p.add_argument("--limit", type=int, help="stop enumeration after this many orderings")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("tree", parents=[common], help="F-tree or L-tree of an ordering")
    graph_arg(p)
    p.add_argument("--tree", choices=["f", "l"], required=True)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--ordering", help="comma-separated vertex names")
    src.add_argument("--rho", help="run the +-search with this tie-break ordering")
    search_arg(p, required=False)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_tree, search="gs")

    p = sub.add_parser("leaf", parents=[common], help="decide a leaf question")
    graph_arg(p)
    p.add_argument("--vertex", action="append", help="vertex name (repeatable; default all)")
    search_arg(p)
    p.add_argument("--tree", choices=["f", "l"], required=True)
    p.add_argument("--kind", choices=["root", "branch", "any"], required=True)
    p.add_argument("--witness", action="store_true", help="include the witness ordering")
    p.set_defaults(func=cmd_leaf)

    p = sub.add_parser("check", parents=[common], help="validate an ordering (and a leaf role)")
    graph_arg(p)
    search_arg(p)
    p.add_argument("--ordering", required=True)
    p.add_argument("--vertex")
    p.add_argument("--tree", choices=["f", "l"], default="f")
    p.add_argument("--kind", choices=["root", "branch", "any"], default="branch")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gadget", parents=[common], help="build or verify a reduction gadget")
    p.add_argument("action", nargs="?", choices=["build", "verify"], default="build")
    p.add_argument("gadget", choices=["dfs-f", "bfs-f", "sat-f"])
    p.add_argument("--in", dest="input", required=True, help="source graph or DIMACS CNF file")
    p.add_argument("--r", help="BFS start vertex (bfs-f)")
    p.add_argument("--v", help="target end vertex (bfs-f)")
    p.add_argument("--out", help="write the target graph here (default stdout)")
    search_arg(p, required=False)
    p.set_defaults(func=cmd_gadget, cap=GADGET_CAP)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive ground truth")
    p.add_argument("action", choices=["certify", "sets"])
    p.add_argument("--theorem", choices=sorted(THEOREMS), type=str.upper)
    p.add_argument("--nmax", type=int, default=5)
    p.add_argument("--nmin", type=int, default=2)
    p.add_argument("--class", dest="graph_class", choices=["chordal", "bipartite", "split"])
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100, help="graphs drawn in random mode")
    p.add_argument("--graph", help="graph for 'sets'")
    search_arg(p, required=False)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(args.pretty)
    try:
        return args.func(args, out)
    except (LeafSearchError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"leafsearch: error: {msg}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
