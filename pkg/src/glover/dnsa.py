"""Interior-degree mapping, the decreasing neighborhood sequence scan, and its oracle check."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

import numpy as np

from .digraph import Digraph, second_out_neighbors
from .errors import EmptyGraphError, LayerTooSmallError, OrientationInfeasibleError
from .layering import (
    UNREACHED,
    RootedLayering,
    TieBreak,
    build_layering,
    min_out_degree_node,
    path_from_root,
)
from .seymour import seymour_oracle


@dataclass(frozen=True)
class InteriorAssignment:
    """Each node of ``layer`` mapped to ``i`` targets inside the layer."""

    layer: tuple[int, ...]
    i: int
    assigned: dict[int, tuple[int, ...]] = field(hash=False)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.layer for v in self.assigned[u]]

    def neighborhood_sizes(self, v: int) -> tuple[int, int]:
        """(|N⁺|, |N⁺⁺|) of ``v`` in the digraph formed by the assignment."""
        first = set(self.assigned[v])
        second = set()
        for w in first:
            second.update(self.assigned[w])
        second -= first
        second.discard(v)
        return len(first), len(second)


def map_interior_degrees(layer: Sequence[int], i: int) -> InteriorAssignment:
    """Circulant assignment: the node at index j targets indices j+1 .. j+i (mod n).

    Raises:
        LayerTooSmallError: ``len(layer) <= i``.
        OrientationInfeasibleError: ``len(layer) <= 2 * i``; some step s and
            n - s would both be used, giving a pair of opposite arcs.
    """
    nodes = tuple(int(v) for v in layer)
    n = len(nodes)
    i = int(i)
    if i < 0:
        raise ValueError("i must be non-negative")
    if len(set(nodes)) != n:
        raise ValueError("layer contains repeated nodes")
    if n <= i:
        raise LayerTooSmallError(f"layer of size {n} cannot give each node {i} distinct targets")
    if n <= 2 * i:
        raise OrientationInfeasibleError(
            f"layer of size {n} with {i} targets per node forces opposite arcs"
        )
    assigned = {u: tuple(nodes[(j + s) % n] for s in range(1, i + 1)) for j, u in enumerate(nodes)}
    return InteriorAssignment(nodes, i, assigned)


class HaltReason(str, enum.Enum):
    BACK = "back"
    DENSE = "dense"
    SIZE = "size"
    LOW_DEGREE_PRECHECK = "low-degree-precheck"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class DnsaResult:
    root: int
    halt_reason: HaltReason
    marked_node: int | None
    layer: int | None
    evidence: dict = field(hash=False)
    path_from_root: tuple[int, ...] = ()

    def as_dict(self) -> dict:
        return {
            "root": self.root,
            "halt_reason": self.halt_reason.value,
            "marked_node": self.marked_node,
            "layer": self.layer,
            "evidence": self.evidence,
            "path_from_root": list(self.path_from_root),
        }


def _slice(ptr: np.ndarray, idx: np.ndarray, v: int) -> np.ndarray:
    return idx[ptr[v] : ptr[v + 1]]


def _halt(l: RootedLayering, reason: HaltReason, marked: int, i: int, evidence: dict) -> DnsaResult:
    return DnsaResult(l.root, reason, marked, i, evidence, tuple(path_from_root(l, marked)))


def run_dnsa(
    g: Digraph,
    root: int | None = None,
    *,
    layering: RootedLayering | None = None,
    tie_break: TieBreak | str = TieBreak.LOWEST_ID,
) -> DnsaResult:
    """Scan the rooted neighborhoods and halt at the first degree-doubling witness.

    Within layer i, nodes are visited in intra-layer order. A back arc out of
    the node halts with ``BACK``; otherwise (i > 0) the representative parent,
    the in-neighbor in layer i-1 that comes first in intra-layer order, is
    tested and a shared out-neighborhood smaller than i halts with ``DENSE``.
    After the layer, |R_i| <= 2 halts with ``SIZE``.

    A root of out-degree at most 2 that is also a global minimum halts before
    the scan with ``LOW_DEGREE_PRECHECK``. Pass a prebuilt ``layering`` to
    skip the BFS; its root wins over ``root``.
    """
    if layering is not None:
        if root is not None and int(root) != layering.root:
            raise ValueError("root disagrees with the supplied layering")
        root = layering.root
    elif root is None:
        if g.node_count == 0:
            raise EmptyGraphError("graph has no nodes")
        root = min_out_degree_node(g, tie_break)
    root = g.check_node(root)

    d0 = g.out_degree(root)
    if d0 <= 2 and d0 == int(g.out_degrees.min()):
        return DnsaResult(
            root, HaltReason.LOW_DEGREE_PRECHECK, root, 0, {"out_degree": d0}, (root,)
        )

    l = layering if layering is not None else build_layering(g, root)
    n = g.node_count
    has_back = np.bincount(l.back_tails, minlength=n) > 0
    optr, oidx = g.csr()
    iptr, iidx = g.csr_in()
    depth, rank = l.depth, l.rank

    def parent_of(u: int, i: int) -> int:
        preds = _slice(iptr, iidx, u)
        preds = preds[depth[preds] == i - 1]
        return int(preds[np.argmin(rank[preds])])

    for i, layer in enumerate(l.layers):
        for u in layer:
            if has_back[u]:
                heads = _slice(optr, oidx, u)
                hd = depth[heads]
                heads, hd = heads[hd < i], hd[hd < i]
                # nearest earlier layer first, then lowest id
                w = int(heads[np.lexsort((heads, -hd))[0]])
                return _halt(
                    l, HaltReason.BACK, u, i,
                    {"back_arc": [u, w], "head_layer": int(depth[w])},
                )
            if i > 0:
                p = parent_of(u, i)
                shared = np.intersect1d(
                    _slice(optr, oidx, p), _slice(optr, oidx, u), assume_unique=True
                ).shape[0]
                if shared < i:
                    return _halt(
                        l, HaltReason.DENSE, p, i,
                        {"parent": p, "child": u, "interior": int(shared), "required": i},
                    )
        if i > 0 and len(layer) <= 2:
            p = min((parent_of(u, i) for u in layer), key=lambda v: rank[v])
            return _halt(l, HaltReason.SIZE, p, i, {"layer_size": len(layer)})
    return DnsaResult(root, HaltReason.EXHAUSTED, None, None, {"k": l.k}, (root,))


@dataclass(frozen=True)
class VerificationRecord:
    """A DNSA outcome next to the brute-force verdict on its marked node.

    ``oracle_confirms`` is ``None`` when nothing was marked.
    """

    root: int
    halt_reason: HaltReason
    marked_node: int | None
    layer: int | None
    oracle_confirms: bool | None
    marked_first_size: int | None
    marked_second_size: int | None
    oracle_seymour_set: tuple[int, ...]

    @property
    def disagreement(self) -> bool:
        return self.oracle_confirms is False

    def as_dict(self) -> dict:
        return {
            "root": self.root,
            "halt_reason": self.halt_reason.value,
            "marked_node": self.marked_node,
            "layer": self.layer,
            "oracle_confirms": self.oracle_confirms,
            "marked_first_size": self.marked_first_size,
            "marked_second_size": self.marked_second_size,
            "oracle_seymour_set": list(self.oracle_seymour_set),
        }


def verify_dnsa(
    g: Digraph,
    root: int | None = None,
    *,
    tie_break: TieBreak | str = TieBreak.LOWEST_ID,
    result: DnsaResult | None = None,
) -> VerificationRecord:
    res = result if result is not None else run_dnsa(g, root, tie_break=tie_break)
    seymour_set = seymour_oracle(g).seymour_set
    m = res.marked_node
    if m is None:
        return VerificationRecord(
            res.root, res.halt_reason, None, res.layer, None, None, None, seymour_set
        )
    first = g.out_degree(m)
    second = len(second_out_neighbors(g, m))
    return VerificationRecord(
        res.root, res.halt_reason, m, res.layer, second >= first, first, second, seymour_set
    )


def write_records_jsonl(records: Iterable[dict], fh: IO[str]) -> int:
    """One sorted-key JSON object per line; returns the number written."""
    count = 0
    for rec in records:
        fh.write(json.dumps(rec, sort_keys=True) + "\n")
        count += 1
    return count


@dataclass(frozen=True)
class LayerDensity:
    index: int
    nodes: int
    arcs: int
    density: float
    seymour_count: int


@dataclass(frozen=True)
class DenseReport:
    rows: tuple[LayerDensity, ...]

    @property
    def densest(self) -> int | None:
        """Index of the layer with the highest density (earliest on ties)."""
        if not self.rows:
            return None
        return max(self.rows, key=lambda r: (r.density, -r.index)).index


def dense_report(l: RootedLayering, g: Digraph | None = None) -> DenseReport:
    g = l.graph if g is None else g
    tails, heads = g.arc_arrays()
    dt = l.depth[tails]
    same = (dt != UNREACHED) & (dt == l.depth[heads])
    per_layer = np.bincount(dt[same], minlength=len(l.layers))
    seymour = seymour_oracle(g)
    rows = []
    for i, layer in enumerate(l.layers):
        n = len(layer)
        max_arcs = n * (n - 1) // 2
        arcs = int(per_layer[i])
        rows.append(
            LayerDensity(
                i, n, arcs, arcs / max_arcs if max_arcs else 0.0,
                sum(1 for v in layer if seymour.is_seymour(v)),
            )
        )
    return DenseReport(tuple(rows))
