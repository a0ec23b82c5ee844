"""Command-line entry point: ``glover <command> [options]``.

Graphs come from ``--fixture NAME``, ``--input FILE`` or a JSON document on
stdin. Exit status is 0 on success, 1 on bad input or usage, 2 when an
internal consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from . import bench as bench_mod
from .claims import check_paper_claims
from .digraph import Digraph
from .dnsa import dense_report, run_dnsa, verify_dnsa, write_records_jsonl
from .errors import GloverError
from .generators import FIXTURE_NAMES, GenSpec, fixture
from .layering import (
    ArcClass,
    TieBreak,
    arc_class,
    build_layering,
    layer_size_sequence,
    min_out_degree_node,
    split_layers,
)
from .seymour import seymour_oracle, square_equivalence_check
from .serialize import (
    ParsedDocument,
    audit_declared_layers,
    declared_root,
    from_json,
    to_dot,
    to_json,
)
from .triangles import enumerate_transitive_triangles, triangle_census

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 by default; usage errors are 1 here
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def default_seed() -> int:
    raw = os.environ.get("GLOVER_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"GLOVER_SEED must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------- input


def load_document(args) -> ParsedDocument:
    if args.fixture:
        g = fixture(args.fixture)
        return ParsedDocument(g, {lab: None for lab in g.labels})
    if args.input and args.input != "-":
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    return from_json(text)


def resolve_root(g: Digraph, args) -> int:
    """Dense id for ``--root`` (given as a document label) or the default minimum."""
    if getattr(args, "root", None) is None:
        return min_out_degree_node(g, args.tie_break)
    try:
        return g.labels.index(args.root)
    except ValueError:
        raise UsageError(f"--root {args.root} is not a node of the graph") from None


# ---------------------------------------------------------------- output


def _table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _ids(g: Digraph, nodes) -> list[int]:
    return [g.labels[v] for v in nodes]


def _relabel(g: Digraph, obj):
    """Map dense ids to labels in the node-valued fields of evidence payloads."""
    if isinstance(obj, dict):
        return {
            k: (_relabel(g, v) if k in _NODE_KEYS or isinstance(v, dict) else v) for k, v in obj.items()
        }
    if isinstance(obj, list):
        return [_relabel(g, v) for v in obj]
    if isinstance(obj, int) and not isinstance(obj, bool):
        return g.labels[obj]
    return obj


_NODE_KEYS = {"parent", "child", "back_arc", "root", "marked_node", "path_from_root", "oracle_seymour_set"}


# ---------------------------------------------------------------- commands


def cmd_analyze(args) -> int:
    g = load_document(args).graph
    rep = seymour_oracle(g)
    sq_ok = square_equivalence_check(g)
    payload: dict = {
        "nodes": g.node_count,
        "arcs": g.arc_count,
        "seymour_set": _ids(g, rep.seymour_set),
        "dnsp_nodes": _ids(g, [r.node for r in rep.rows if not r.is_seymour]),
        "square_equivalence": sq_ok,
        "per_node": [
            {"node": g.labels[r.node], "first_size": r.first_size, "second_size": r.second_size,
             "is_seymour": r.is_seymour}
            for r in rep.rows
        ],
    }
    text = [f"nodes {g.node_count}  arcs {g.arc_count}"]
    if g.node_count:
        root = resolve_root(g, args)
        sizes = layer_size_sequence(build_layering(g, root))
        payload["root"] = g.labels[root]
        payload["layer_sizes"] = list(sizes.sizes)
        text.append(f"root {g.labels[root]}  layer sizes {list(sizes.sizes)}")
    text.append(
        f"seymour nodes {len(rep.seymour_set)}  dnsp nodes {len(payload['dnsp_nodes'])}  "
        f"square equivalence {'ok' if sq_ok else 'FAILED'}"
    )
    text.append(_table(
        ["node", "|N+|", "|N++|", "seymour"],
        [(g.labels[r.node], r.first_size, r.second_size, "yes" if r.is_seymour else "no") for r in rep.rows],
    ))
    _emit(args, payload, "\n".join(text))
    return EXIT_OK if sq_ok else EXIT_INVARIANT


def cmd_layering(args) -> int:
    g = load_document(args).graph
    root = resolve_root(g, args)
    l = build_layering(g, root)
    if args.dot:
        print(to_dot(g, l), end="")
        return EXIT_OK
    counts = {c.value: 0 for c in ArcClass}
    for u, v in g.arcs():
        counts[arc_class(l, u, v).value] += 1
    payload = {
        "root": g.labels[root],
        "layers": [_ids(g, layer) for layer in l.layers],
        "unreachable": _ids(g, l.unreachable),
        "arc_classes": counts,
        "back_arcs": [[g.labels[b.tail], g.labels[b.head], b.delta] for b in l.back_arcs],
    }
    rows = [(f"R_{i}", len(layer), " ".join(map(str, _ids(g, layer)))) for i, layer in enumerate(l.layers)]
    if l.unreachable:
        rows.append(("unreachable", len(l.unreachable), " ".join(map(str, payload["unreachable"]))))
    text = [f"root {g.labels[root]}", _table(["layer", "size", "nodes (intra-layer order)"], rows)]
    text.append("arc classes: " + ", ".join(f"{k} {v}" for k, v in counts.items()))
    if l.back_arcs:
        text.append("back arcs: " + ", ".join(f"{t}->{h} (span {d})" for t, h, d in payload["back_arcs"]))
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def cmd_triangles(args) -> int:
    g = load_document(args).graph
    root = resolve_root(g, args) if g.node_count else None
    triangles = enumerate_transitive_triangles(g)
    payload: dict = {"total": len(triangles)}
    text = [f"transitive triangles {len(triangles)}"]
    if root is not None:
        census = triangle_census(g, build_layering(g, root))
        payload.update(census.as_dict())
        payload["unclassifiable_triangles"] = [_ids(g, t) for t in census.unclassifiable]
        payload["root"] = g.labels[root]
        text.append(f"root {g.labels[root]}")
        rows = list(payload["counts"].items())
        rows += [("unclassifiable", len(census.unclassifiable)), ("unreachable", census.unreachable)]
        text.append(_table(["type", "count"], rows))
    if args.list:
        payload["triangles"] = [_ids(g, t) for t in triangles]
        text.extend(" ".join(map(str, t)) for t in payload["triangles"])
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def cmd_dnsa(args) -> int:
    g = load_document(args).graph
    root = None if args.root is None else resolve_root(g, args)
    res = run_dnsa(g, root, tie_break=args.tie_break)
    rec = verify_dnsa(g, tie_break=args.tie_break, result=res)
    if rec.oracle_confirms and rec.marked_second_size < rec.marked_first_size:
        print("internal error: oracle confirmation contradicts neighborhood sizes", file=sys.stderr)
        return EXIT_INVARIANT
    payload = _relabel(g, {**rec.as_dict(), "evidence": res.evidence, "path_from_root": list(res.path_from_root)})
    if args.records:
        with open(args.records, "a", encoding="utf-8") as fh:
            write_records_jsonl([payload], fh)
    if args.density:
        rows = dense_report(build_layering(g, res.root), g).rows
        payload["density"] = [r.__dict__ for r in rows]
    verdict = {True: "confirmed", False: "DISAGREES", None: "n/a"}[rec.oracle_confirms]
    text = [
        f"root {payload['root']}  halt {rec.halt_reason.value}  layer {rec.layer}",
        f"marked {payload['marked_node']}  |N+| {rec.marked_first_size}  |N++| {rec.marked_second_size}  oracle {verdict}",
        f"evidence {json.dumps(payload['evidence'], sort_keys=True)}",
        f"path {' -> '.join(map(str, payload['path_from_root']))}",
    ]
    if args.density:
        text.append(_table(
            ["layer", "nodes", "arcs", "density", "seymour"],
            [(r["index"], r["nodes"], r["arcs"], f"{r['density']:.3f}", r["seymour_count"]) for r in payload["density"]],
        ))
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def cmd_claims(args) -> int:
    g = load_document(args).graph
    root = resolve_root(g, args)
    report = check_paper_claims(g, root)
    payload = report.as_dict()
    payload["root"] = g.labels[root]
    if g.labels != tuple(range(g.node_count)):
        # witnesses use dense ids; publish the mapping
        payload["labels"] = list(g.labels)
    rows = [
        (r.claim, r.status.value, r.instances, r.premise_instances, r.violations,
         json.dumps(r.witnesses[0], sort_keys=True) if r.witnesses else "")
        for r in report.records
    ]
    text = f"root {g.labels[root]}\n" + _table(
        ["claim", "status", "instances", "premise", "violations", "first witness"], rows
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    if args.kind == "fixture" and not args.name:
        raise UsageError("--kind fixture needs --name")
    if args.kind in ("random", "tournament", "cycle") and args.n is None:
        raise UsageError(f"--kind {args.kind} needs --n")
    spec = GenSpec(args.kind, args.n or 0, args.p, seed, args.name)
    g = spec.build()
    print(to_json(g))
    return EXIT_OK


def cmd_split(args) -> int:
    g = load_document(args).graph
    root = resolve_root(g, args)
    s = split_layers(build_layering(g, root), args.boundary)
    payload = {
        "root": g.labels[root],
        "boundary": args.boundary,
        "group_a": _ids(g, s.group_a),
        "buffer": _ids(g, s.buffer),
        "group_b": _ids(g, s.group_b),
        "crossing": [[g.labels[u], g.labels[v]] for u, v in s.crossing],
        "interference": s.interference,
    }
    text = "\n".join(
        [f"root {payload['root']}  boundary R_{args.boundary}"]
        + [f"{k}: {' '.join(map(str, payload[k]))}" for k in ("group_a", "buffer", "group_b")]
        + [f"crossing arcs {s.interference}: " + ", ".join(f"{u}->{v}" for u, v in payload["crossing"])]
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_bench(args) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    rows = bench_mod.run_bench(args.sizes, args.avg_arcs, seed, args.repeats)
    spread = bench_mod.scaling_spread(rows)
    payload = {"rows": [r.as_dict() for r in rows], "spread": spread}
    text = _table(
        ["n", "m", "layering s", "dnsa s", "ns/(n+m)", "halt"],
        [(r.n, r.m, f"{r.layering_seconds:.4f}", f"{r.dnsa_seconds:.4f}", f"{r.ns_per_element:.1f}", r.halt_reason)
         for r in rows],
    ) + f"\nspread (max/min ns per element) {spread:.2f}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    doc = load_document(args)
    g = doc.graph
    emitted = to_json(g)
    again = from_json(emitted)
    identical = again.graph == g and again.graph.labels == g.labels and to_json(again.graph) == emitted
    payload: dict = {"nodes": g.node_count, "arcs": g.arc_count, "roundtrip_identical": identical}
    text = [f"nodes {g.node_count}  arcs {g.arc_count}  round-trip {'identical' if identical else 'MISMATCH'}"]
    if any(v is not None for v in doc.declared.values()) and g.node_count:
        root = declared_root(doc) if args.root is None else resolve_root(g, args)
        if root is None:
            root = min_out_degree_node(g, args.tie_break)
        diff = audit_declared_layers(doc, build_layering(g, root))
        payload["audit_root"] = g.labels[root]
        payload["audit"] = [r._asdict() for r in diff]
        text.append(f"declared neighborhoods vs recomputed (root {g.labels[root]}): {len(diff)} differ")
        if diff:
            text.append(_table(["node", "declared", "computed"], diff))
    _emit(args, payload, "\n".join(text))
    return EXIT_OK if identical else EXIT_INVARIANT


# ---------------------------------------------------------------- parser


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--fixture", choices=FIXTURE_NAMES, help="use a built-in graph")
    src.add_argument("--input", "-i", metavar="FILE", help="graph document (default: stdin)")


def _add_root(p: argparse.ArgumentParser) -> None:
    p.add_argument("--root", type=int, help="root node (default: a minimum out-degree node)")
    p.add_argument(
        "--tie-break", choices=[t.value for t in TieBreak], default=TieBreak.LOWEST_ID.value,
        help="rule for picking among minimum out-degree nodes",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="glover", description="Layered analysis of oriented graphs and Seymour vertices.")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["table", "json"], default="table", help="output format")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", parents=[common], help="per-node |N+| / |N++| report and layer sizes")
    _add_input(p)
    _add_root(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("layering", parents=[common], help="rooted neighborhoods and arc classes")
    _add_input(p)
    _add_root(p)
    p.add_argument("--dot", action="store_true", help="print a Graphviz document instead")
    p.set_defaults(func=cmd_layering)

    p = sub.add_parser("triangles", parents=[common], help="transitive triangle census")
    _add_input(p)
    _add_root(p)
    p.add_argument("--list", action="store_true", help="also list every triangle")
    p.set_defaults(func=cmd_triangles)

    p = sub.add_parser("dnsa", parents=[common], help="run the neighborhood-sequence scan and check it against the oracle")
    _add_input(p)
    _add_root(p)
    p.add_argument("--records", metavar="FILE", help="append the record as a JSON line")
    p.add_argument("--density", action="store_true", help="include the per-layer density table")
    p.set_defaults(func=cmd_dnsa)

    p = sub.add_parser("claims", parents=[common], help="evaluate the lemma claims on one graph")
    _add_input(p)
    _add_root(p)
    p.set_defaults(func=cmd_claims)

    p = sub.add_parser("gen", parents=[common], help="emit a generated graph as JSON")
    p.add_argument("--kind", choices=["random", "tournament", "cycle", "fixture"], required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--seed", type=int, help="default: $GLOVER_SEED or 0")
    p.add_argument("--name", choices=FIXTURE_NAMES)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("split", parents=[common], help="split the layering at a boundary layer")
    _add_input(p)
    _add_root(p)
    p.add_argument("--boundary", type=int, required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("bench", parents=[common], help="time layering + scan on random graphs")
    p.add_argument("--sizes", type=int, nargs="+", default=[1_000, 10_000, 100_000])
    p.add_argument("--avg-arcs", type=float, default=5.0, help="expected arcs per node")
    p.add_argument("--seed", type=int)
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("roundtrip", parents=[common], help="re-emit a document and audit declared neighborhoods")
    _add_input(p)
    _add_root(p)
    p.set_defaults(func=cmd_roundtrip)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except (GloverError, OSError) as exc:
        print(f"glover: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"glover: internal check failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
