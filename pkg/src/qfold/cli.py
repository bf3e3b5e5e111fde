"""Command-line interface.

Verbs: fold, mutate, unfold, weave, graph, redseq, verify, serve.  Matrices
and quivers travel as JSON files; pass - to read stdin or write stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from .explore import exchange_graph, export_dot, reddening_search
from .folding import FoldedMatrix, act_on_quiver, canonical_unfold, fold, weave
from .groups import PermGroup, element_from_json
from .quivers import Quiver
from .special import RULE_NAMES, mutate_rule


def _read_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _write_json(data: dict, path: str | None) -> None:
    text = json.dumps(data, indent=2)
    if path is None or path == "-":
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _load_matrix(path: str) -> FoldedMatrix:
    return FoldedMatrix.from_json(_read_json(path))


def _parse_reps(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    return tuple(int(part) for part in text.split(","))


def _print_pretty(B: FoldedMatrix) -> None:
    cells = B.pretty()
    widths = [max(len(cells[i][j]) for i in range(B.m)) for j in range(B.m)]
    for row in cells:
        print("[ " + "  ".join(cell.rjust(w) for cell, w in zip(row, widths)) + " ]")


def cmd_fold(args: argparse.Namespace) -> int:
    quiver = Quiver.from_json(_read_json(args.quiver))
    action = _read_json(args.action)
    group = PermGroup.from_json({"generators": action["generators"]})
    reps = _parse_reps(args.reps)
    if reps is None and "reps" in action:
        reps = tuple(int(r) for r in action["reps"])
    qa = act_on_quiver(group, quiver, action["vertex_maps"], reps)
    B = fold(qa)
    if args.pretty:
        _print_pretty(B)
    _write_json(B.to_json(), args.output)
    return 0


def cmd_mutate(args: argparse.Namespace) -> int:
    B = _load_matrix(args.matrix)
    kind, out, stale = mutate_rule(B, args.index, args.rule)
    data = out.to_json()
    data["rule"] = kind
    if stale:
        data["stale"] = sorted(stale)
    if args.pretty:
        _print_pretty(out)
    _write_json(data, args.output)
    return 0


def cmd_unfold(args: argparse.Namespace) -> int:
    B = _load_matrix(args.matrix)
    qa = canonical_unfold(B)
    data = qa.quiver.to_json()
    data["vertex_maps"] = [list(qa.action.vertex_map(g)) for g in qa.group.generators]
    data["generators"] = [g.to_json() for g in qa.group.generators]
    data["reps"] = list(qa.representatives)
    _write_json(data, args.output)
    return 0


def cmd_weave(args: argparse.Namespace) -> int:
    B = _load_matrix(args.matrix)
    g = element_from_json(json.loads(args.element))
    out = weave(B, args.index, g)
    if args.pretty:
        _print_pretty(out)
    _write_json(out.to_json(), args.output)
    return 0


def cmd_graph(args: argparse.Namespace) -> int:
    data = _read_json(args.matrix if args.matrix else args.quiver)
    start = FoldedMatrix.from_json(data) if "entries" in data else Quiver.from_json(data)
    graph = exchange_graph(start, budget=args.max_nodes, rule=args.rule)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(export_dot(graph))
    summary = {
        "nodes": len(graph.nodes),
        "edges": len(graph.edges),
        "complete": graph.complete,
    }
    if graph.blocked:
        summary["blocked"] = [list(item) for item in graph.blocked]
    _write_json(summary, args.output)
    return 0


def cmd_redseq(args: argparse.Namespace) -> int:
    quiver = Quiver.from_json(_read_json(args.quiver))
    seq = reddening_search(quiver, args.depth)
    if seq is None:
        _write_json({"found": False, "depth": args.depth}, args.output)
        return 1
    _write_json({"found": True, "steps": list(seq.steps)}, args.output)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    from .verify import run_suite

    results = run_suite(args.suite)
    failures = 0
    for res in results:
        if res.ok:
            print(f"PASS {res.name}")
        else:
            failures += 1
            detail = f": {res.detail}" if res.detail else ""
            print(f"FAIL {res.name}{detail}")
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 1 if failures else 0


def cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve

    serve(args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qfold", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fold", help="fold a symmetric quiver over a group action")
    p.add_argument("-q", "--quiver", required=True, help="quiver JSON file")
    p.add_argument("-a", "--action", required=True, help="action JSON file")
    p.add_argument("--reps", help="comma-separated orbit representatives")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.add_argument("--pretty", action="store_true", help="also print the matrix")
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("mutate", help="mutate a folded matrix at an index")
    p.add_argument("-m", "--matrix", required=True, help="folded matrix JSON file")
    p.add_argument("-k", "--index", type=int, required=True)
    p.add_argument("--rule", default="auto", choices=("auto",) + RULE_NAMES)
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.add_argument("--pretty", action="store_true", help="also print the matrix")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("unfold", help="reconstruct a symmetric quiver from a folded matrix")
    p.add_argument("-m", "--matrix", required=True, help="folded matrix JSON file")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.set_defaults(func=cmd_unfold)

    p = sub.add_parser("weave", help="move one orbit representative by a group element")
    p.add_argument("-m", "--matrix", required=True, help="folded matrix JSON file")
    p.add_argument("-j", "--index", type=int, required=True)
    p.add_argument("-g", "--element", required=True, help="group element JSON literal")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.add_argument("--pretty", action="store_true", help="also print the matrix")
    p.set_defaults(func=cmd_weave)

    p = sub.add_parser("graph", help="explore the exchange graph")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("-m", "--matrix", help="folded matrix JSON file")
    src.add_argument("-q", "--quiver", help="quiver JSON file")
    p.add_argument("--max-nodes", type=int, default=100000)
    p.add_argument("--rule", default="auto")
    p.add_argument("--dot", help="write the graph in DOT format to this file")
    p.add_argument("-o", "--output", help="summary output file (default stdout)")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("redseq", help="search for a reddening sequence")
    p.add_argument("-q", "--quiver", required=True, help="quiver JSON file")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.set_defaults(func=cmd_redseq)

    p = sub.add_parser("verify", help="run the built-in validation suites")
    p.add_argument(
        "--suite",
        default="all",
        choices=("all", "theorems", "diag3", "diag4", "markov", "corpus"),
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--port", type=int, default=7070)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, IndexError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
