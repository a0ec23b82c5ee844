"""Graph Level Order: BFS layers from a root, arc classes and degree partitions."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .digraph import Digraph, NeighborSet, second_out_neighbors
from .errors import (
    BoundaryOutOfRangeError,
    EmptyGraphError,
    NotAnArcError,
    NotParentChildError,
)

UNREACHED = -1


class TieBreak(str, enum.Enum):
    LOWEST_ID = "lowest-id"
    HIGHEST_IN_DEGREE = "highest-in-degree"


class ArcClass(str, enum.Enum):
    FORWARD = "forward"
    LATERAL = "lateral"
    BACK = "back"
    FROM_UNREACHABLE = "from-unreachable"


class BackArc(NamedTuple):
    tail: int
    head: int
    delta: int


def min_out_degree_node(g: Digraph, tie_break: TieBreak | str = TieBreak.LOWEST_ID) -> int:
    if g.node_count == 0:
        raise EmptyGraphError("graph has no nodes")
    deg = g.out_degrees
    candidates = np.flatnonzero(deg == deg.min())
    if TieBreak(tie_break) is TieBreak.HIGHEST_IN_DEGREE:
        ind = g.in_degrees[candidates]
        candidates = candidates[ind == ind.max()]
    return int(candidates[0])


def _bfs_depth(g: Digraph, root: int) -> np.ndarray:
    indptr, idx = g.csr()
    depth = np.full(g.node_count, UNREACHED, dtype=np.int64)
    depth[root] = 0
    frontier = np.array([root], dtype=np.int64)
    level = 0
    while frontier.size:
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        # gather all out-neighbors of the frontier in one shot
        shift = np.repeat(starts - np.cumsum(counts) + counts, counts)
        nbrs = idx[shift + np.arange(total, dtype=np.int64)]
        nbrs = np.unique(nbrs[depth[nbrs] == UNREACHED])
        level += 1
        depth[nbrs] = level
        frontier = nbrs
    return depth


@dataclass(frozen=True, eq=False)
class RootedLayering:
    """Rooted neighborhoods R_0..R_k of ``graph`` around ``root``.

    ``depth[v]`` is the BFS distance from the root, ``-1`` when unreachable.
    Each layer lists its nodes by out-degree descending, then id ascending.
    """

    graph: Digraph
    root: int
    depth: np.ndarray
    layers: tuple[tuple[int, ...], ...]
    rank: np.ndarray
    back_tails: np.ndarray
    back_heads: np.ndarray

    @property
    def k(self) -> int:
        return len(self.layers) - 1

    def distance(self, v: int) -> int | None:
        d = int(self.depth[self.graph.check_node(v)])
        return None if d == UNREACHED else d

    def reachable(self, v: int) -> bool:
        return int(self.depth[v]) != UNREACHED

    @cached_property
    def dist(self) -> tuple[int | None, ...]:
        return tuple(None if d == UNREACHED else d for d in self.depth.tolist())

    @cached_property
    def unreachable(self) -> tuple[int, ...]:
        return tuple(np.flatnonzero(self.depth == UNREACHED).tolist())

    @cached_property
    def back_arcs(self) -> tuple[BackArc, ...]:
        """Arcs whose head is strictly closer to the root than the tail.

        Sorted by (tail, head).
        """
        d = self.depth
        return tuple(
            BackArc(t, h, int(d[t] - d[h]))
            for t, h in zip(self.back_tails.tolist(), self.back_heads.tolist())
        )

    def layer_of(self, v: int) -> tuple[int, ...]:
        d = self.distance(v)
        return () if d is None else self.layers[d]

    def sizes(self) -> list[int]:
        return [len(layer) for layer in self.layers]


def build_layering(g: Digraph, root: int) -> RootedLayering:
    root = g.check_node(root)
    depth = _bfs_depth(g, root)
    depth.flags.writeable = False
    reach = np.flatnonzero(depth != UNREACHED)
    order = reach[np.lexsort((reach, -g.out_degrees[reach], depth[reach]))]
    bounds = np.cumsum(np.bincount(depth[order]))
    layers = tuple(tuple(part.tolist()) for part in np.split(order, bounds[:-1]))
    rank = np.full(g.node_count, np.iinfo(np.int64).max, dtype=np.int64)
    rank[order] = np.arange(order.shape[0], dtype=np.int64)
    rank.flags.writeable = False
    tails, heads = g.arc_arrays()
    dt, dh = depth[tails], depth[heads]
    back = (dh != UNREACHED) & (dh < dt)
    return RootedLayering(g, root, depth, layers, rank, tails[back], heads[back])


def arc_class(l: RootedLayering, tail: int, head: int) -> ArcClass:
    if not l.graph.has_arc(tail, head):
        raise NotAnArcError(tail, head)
    dt, dh = int(l.depth[tail]), int(l.depth[head])
    if dt == UNREACHED:
        return ArcClass.FROM_UNREACHABLE
    if dh == dt + 1:
        return ArcClass.FORWARD
    if dh == dt:
        return ArcClass.LATERAL
    return ArcClass.BACK


@dataclass(frozen=True)
class NeighborPartition:
    parent: int
    child: int
    interior: NeighborSet
    exterior: NeighborSet
    back: NeighborSet


def is_parent_child(l: RootedLayering, parent: int, child: int) -> bool:
    dp = int(l.depth[parent])
    return dp != UNREACHED and int(l.depth[child]) == dp + 1 and l.graph.has_arc(parent, child)


def neighbor_partition(l: RootedLayering, parent: int, child: int) -> NeighborPartition:
    """Split ``child``'s out-neighbors into interior / exterior / back.

    back: strictly closer to the root than ``child``; interior: same layer as
    ``child`` and also an out-neighbor of ``parent``; exterior: everything else.
    """
    g = l.graph
    parent, child = g.check_node(parent), g.check_node(child)
    if not is_parent_child(l, parent, child):
        raise NotParentChildError(parent, child)
    dc = int(l.depth[child])
    shared = set(g.out_neighbors(parent))
    interior, exterior, back = [], [], []
    for w in g.out_neighbors(child):
        dw = int(l.depth[w])
        if dw < dc:
            back.append(w)
        elif dw == dc and w in shared:
            interior.append(w)
        else:
            exterior.append(w)
    return NeighborPartition(parent, child, tuple(interior), tuple(exterior), tuple(back))


def exterior_set_definitional(g: Digraph, u: int, v: int) -> NeighborSet:
    """N⁺⁺(u) ∩ N⁺(v), with no reference to any layering."""
    if not g.has_arc(u, v):
        raise NotAnArcError(u, v)
    second = set(second_out_neighbors(g, u))
    return tuple(w for w in g.out_neighbors(v) if w in second)


def interior_set_definitional(g: Digraph, u: int, v: int) -> NeighborSet:
    """N⁺(u) ∩ N⁺(v)."""
    first = set(g.out_neighbors(u))
    return tuple(w for w in g.out_neighbors(v) if w in first)


@dataclass(frozen=True)
class LayerSizes:
    sizes: tuple[int, ...]
    delta: int
    # bound_ok[j] answers |R_{j+1}| <= delta - j
    bound_ok: tuple[bool, ...]


def layer_size_sequence(l: RootedLayering) -> LayerSizes:
    sizes = tuple(l.sizes())
    delta = l.graph.out_degree(l.root)
    ok = tuple(sizes[i] <= delta - (i - 1) for i in range(1, len(sizes)))
    return LayerSizes(sizes, delta, ok)


@dataclass(frozen=True)
class LayerSplit:
    group_a: tuple[int, ...]
    buffer: tuple[int, ...]
    group_b: tuple[int, ...]
    crossing: tuple[tuple[int, int], ...]

    @property
    def interference(self) -> int:
        return len(self.crossing)


def split_layers(l: RootedLayering, boundary: int) -> LayerSplit:
    """Cut the order at layer ``boundary`` into A | buffer | B.

    ``crossing`` lists arcs running directly between A and B in either
    direction; only back arcs spanning two or more layers produce them.
    """
    b = int(boundary)
    if not 1 <= b <= l.k:
        raise BoundaryOutOfRangeError(f"boundary {b} outside [1, {l.k}]")
    d = l.depth
    in_a = (d != UNREACHED) & (d < b)
    in_b = (d == UNREACHED) | (d > b)
    tails, heads = l.graph.arc_arrays()
    cross = (in_a[tails] & in_b[heads]) | (in_b[tails] & in_a[heads])
    return LayerSplit(
        tuple(np.flatnonzero(in_a).tolist()),
        tuple(sorted(l.layers[b])),
        tuple(np.flatnonzero(in_b).tolist()),
        tuple(zip(tails[cross].tolist(), heads[cross].tolist())),
    )


def interior_doubles(l: RootedLayering, v: int) -> bool:
    """Whether ``v`` doubles its degree inside the subgraph induced by its own layer."""
    g = l.graph
    dv = int(l.depth[v])
    if dv == UNREACHED:
        return False
    first = [w for w in g.out_neighbors(v) if int(l.depth[w]) == dv]
    seen = set(first)
    seen.add(v)
    second = set()
    for w in first:
        for x in g.out_neighbors(w):
            if x not in seen and int(l.depth[x]) == dv:
                second.add(x)
    return len(second) >= len(first)


def path_from_root(l: RootedLayering, v: int) -> list[int]:
    """A shortest path root -> v; each step back picks the lowest-id predecessor."""
    if not l.reachable(v):
        raise NotParentChildError(l.root, v)
    g = l.graph
    path = [v]
    while path[-1] != l.root:
        cur = path[-1]
        want = int(l.depth[cur]) - 1
        path.append(min(p for p in g.in_neighbors(cur) if int(l.depth[p]) == want))
    path.reverse()
    return path

