"""JSON graph documents and Graphviz DOT export.

A document maps stringified node ids to ``{"targets": [...], "neighborhood": "R_i"}``.
Keys are emitted in numeric order and targets ascending, so emitting the same
graph twice gives identical bytes. Non-contiguous ids are kept as node labels.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import NamedTuple

from .digraph import Digraph, OrientedGraph, build_graph
from .errors import (
    DanglingTargetError,
    DocumentError,
    DuplicateArcError,
    GraphValidationError,
    SelfLoopError,
    SymmetricPairError,
)
from .layering import UNREACHED, ArcClass, RootedLayering, arc_class

UNREACHABLE_LABEL = "unreachable"


def neighborhood_label(l: RootedLayering, v: int) -> str:
    d = int(l.depth[v])
    return UNREACHABLE_LABEL if d == UNREACHED else f"R_{d}"


def to_document(g: Digraph, l: RootedLayering | None = None) -> dict:
    lab = g.labels
    doc = {}
    for v, targets in enumerate(g.successors):
        entry: dict = {"targets": sorted(lab[w] for w in targets)}
        if l is not None:
            entry["neighborhood"] = neighborhood_label(l, v)
        doc[str(lab[v])] = entry
    return doc


def to_json(g: Digraph, l: RootedLayering | None = None, *, indent: int | None = 2) -> str:
    # labels are sorted ascending, so insertion order is already numeric
    return json.dumps(to_document(g, l), indent=indent)


@dataclass(frozen=True)
class ParsedDocument:
    graph: OrientedGraph
    # neighborhood strings as written in the input, keyed by label; never trusted
    declared: dict[int, str | None]


def _no_duplicate_keys(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise DocumentError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _as_id(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise DocumentError(f"{where}: expected a node id, got {value!r}")
    if isinstance(value, str):
        if not re.fullmatch(r"\d+", value):
            raise DocumentError(f"{where}: node id {value!r} is not a non-negative integer")
        return int(value)
    if value < 0:
        raise DocumentError(f"{where}: node id {value} is negative")
    return value


def from_json(text: str) -> ParsedDocument:
    """Parse and validate a document.

    Raises:
        DocumentError: malformed JSON or wrong shape.
        DanglingTargetError: a target that is not itself a key.
        GraphValidationError: self-loops, duplicates or opposite arcs,
            reported with the document's own ids.
    """
    try:
        raw = json.loads(text, object_pairs_hook=_no_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object")
    entries: dict[int, tuple[list[int], str | None]] = {}
    for key, body in raw.items():
        node = _as_id(key, "key")
        if node in entries:
            raise DocumentError(f"node {node} appears under two keys")
        if not isinstance(body, dict) or "targets" not in body:
            raise DocumentError(f"node {key}: entry needs a 'targets' list")
        targets = body["targets"]
        if not isinstance(targets, list):
            raise DocumentError(f"node {key}: 'targets' must be a list")
        hood = body.get("neighborhood")
        if hood is not None and not isinstance(hood, str):
            raise DocumentError(f"node {key}: 'neighborhood' must be a string")
        entries[node] = ([_as_id(t, f"node {key} target") for t in targets], hood)

    labels = sorted(entries)
    dense = {lab: i for i, lab in enumerate(labels)}
    arcs = []
    for u in labels:
        for w in entries[u][0]:
            if w not in dense:
                raise DanglingTargetError(u, w)
            arcs.append((dense[u], dense[w]))
    try:
        g = build_graph(len(labels), arcs, labels=labels)
    except SelfLoopError as exc:
        raise SelfLoopError(labels[exc.node]) from None
    except DuplicateArcError as exc:
        raise DuplicateArcError(labels[exc.u], labels[exc.v]) from None
    except SymmetricPairError as exc:
        raise SymmetricPairError(labels[exc.u], labels[exc.v]) from None
    return ParsedDocument(g, {lab: entries[lab][1] for lab in labels})


class AuditRow(NamedTuple):
    label: int
    declared: str
    computed: str


def audit_declared_layers(doc: ParsedDocument, l: RootedLayering) -> list[AuditRow]:
    """Nodes whose declared neighborhood differs from the recomputed one."""
    g = doc.graph
    out = []
    for v, lab in enumerate(g.labels):
        declared = doc.declared.get(lab)
        if declared is None:
            continue
        computed = neighborhood_label(l, v)
        if declared != computed:
            out.append(AuditRow(lab, declared, computed))
    return out


def declared_root(doc: ParsedDocument) -> int | None:
    """Dense id of the single node declared ``R_0``, if there is exactly one."""
    hits = [i for i, lab in enumerate(doc.graph.labels) if doc.declared.get(lab) == "R_0"]
    return hits[0] if len(hits) == 1 else None


_EDGE_STYLE = {
    ArcClass.LATERAL: 'style=solid, color="black"',
    ArcClass.FORWARD: 'style=solid, color="gray"',
    ArcClass.BACK: 'style=dashed, color="black"',
    ArcClass.FROM_UNREACHABLE: 'style=dotted, color="gray"',
}


def to_dot(g: Digraph, l: RootedLayering | None = None, name: str = "G") -> str:
    """Graphviz text; with a layering, one cluster per layer and styled arcs."""
    lab = g.labels
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    if l is None:
        lines.extend(f"  {lab[v]};" for v in range(g.node_count))
    else:
        for i, layer in enumerate(l.layers):
            members = " ".join(f"{lab[v]};" for v in sorted(layer))
            lines.append(f'  subgraph cluster_R{i} {{ label="R_{i}"; {members} }}')
        if l.unreachable:
            members = " ".join(f"{lab[v]};" for v in l.unreachable)
            lines.append(f'  subgraph cluster_unreachable {{ label="unreachable"; {members} }}')
    for u, v in g.arcs():
        if l is None:
            lines.append(f"  {lab[u]} -> {lab[v]};")
        else:
            lines.append(f"  {lab[u]} -> {lab[v]} [{_EDGE_STYLE[arc_class(l, u, v)]}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


class DotSyntaxError(ValueError):
    pass


_DOT_TOKEN = re.compile(
    r'\s*(?:(?P<arrow>->|--)|(?P<punct>[{}\[\];,=:])|(?P<id>[A-Za-z_][A-Za-z_0-9]*|-?(?:\.\d+|\d+(?:\.\d*)?))|(?P<str>"(?:[^"\\]|\\.)*"))'
)


def _tokenize_dot(text: str) -> list[str]:
    text = re.sub(r"//[^\n]*|/\*.*?\*/", " ", text, flags=re.S)
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _DOT_TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise DotSyntaxError(f"unexpected character at offset {pos}: {text[pos:pos + 10]!r}")
        tokens.append(m.group(m.lastgroup))
        pos = m.end()
    return tokens


class _DotParser:
    """Recursive descent over the core DOT grammar (no ports or HTML labels)."""

    _KEYWORDS = {"graph", "node", "edge", "subgraph", "digraph", "strict"}

    def __init__(self, tokens: list[str]):
        self.t = tokens
        self.i = 0

    def peek(self) -> str | None:
        return self.t[self.i] if self.i < len(self.t) else None

    def take(self, want: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            raise DotSyntaxError(f"expected {want or 'token'} at token {self.i}, got {tok!r}")
        self.i += 1
        return tok

    def is_id(self, tok: str | None) -> bool:
        return tok is not None and tok not in self._KEYWORDS and (
            tok[0] == '"' or tok[0].isalnum() or tok[0] in "_-."
        )

    def ident(self) -> str:
        tok = self.take()
        if not self.is_id(tok):
            raise DotSyntaxError(f"expected identifier, got {tok!r}")
        return tok

    def graph(self) -> None:
        if self.peek() == "strict":
            self.take()
        if self.peek() not in ("digraph", "graph"):
            raise DotSyntaxError("document must start with 'graph' or 'digraph'")
        self.take()
        if self.is_id(self.peek()):
            self.ident()
        self.block()
        if self.peek() is not None:
            raise DotSyntaxError(f"trailing tokens after graph body: {self.peek()!r}")

    def block(self) -> None:
        self.take("{")
        while self.peek() != "}":
            if self.peek() is None:
                raise DotSyntaxError("unterminated block")
            self.stmt()
            if self.peek() in (";", ","):
                self.take()
        self.take("}")

    def attr_list(self) -> None:
        while self.peek() == "[":
            self.take("[")
            while self.peek() != "]":
                self.ident()
                if self.peek() == "=":
                    self.take()
                    self.ident()
                if self.peek() in (";", ","):
                    self.take()
            self.take("]")

    def operand(self) -> None:
        if self.peek() in ("subgraph", "{"):
            self.subgraph()
        else:
            self.ident()

    def subgraph(self) -> None:
        if self.peek() == "subgraph":
            self.take()
            if self.is_id(self.peek()):
                self.ident()
        self.block()

    def stmt(self) -> None:
        tok = self.peek()
        if tok in ("graph", "node", "edge"):
            self.take()
            self.attr_list()
            return
        self.operand()
        if self.peek() == "=":
            self.take()
            self.ident()
            return
        while self.peek() in ("->", "--"):
            self.take()
            self.operand()
        self.attr_list()


def validate_dot(text: str) -> bool:
    """True when ``text`` parses under the core DOT grammar; raises otherwise."""
    _DotParser(_tokenize_dot(text)).graph()
    return True
