"""Validated oriented graphs on dense integer ids.

Graphs are immutable and stored as CSR arrays (sorted heads per tail and
sorted tails per head), so construction and traversal stay linear even for
millions of arcs. Per-node accessors return plain Python tuples.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import (
    DuplicateArcError,
    IdOutOfRangeError,
    SelfLoopError,
    SymmetricPairError,
)

NeighborSet = tuple[int, ...]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _csr(node_count: int, keys: np.ndarray, major: np.ndarray, minor: np.ndarray):
    """Order (major, minor) pairs by key and return (indptr, minor_sorted)."""
    order = np.argsort(keys, kind="stable")
    counts = np.bincount(major, minlength=node_count)
    indptr = np.zeros(node_count + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, minor[order].astype(np.int64, copy=False)


class Digraph:
    """A simple directed graph with no self-loops; symmetric pairs allowed.

    Use :func:`build_graph` for oriented graphs. Plain digraphs only come out
    of :func:`square_graph`.
    """

    oriented = False

    def __init__(
        self,
        node_count: int,
        tails: np.ndarray,
        heads: np.ndarray,
        labels: Sequence[int] | None = None,
        source_ids: Sequence[int] | None = None,
    ) -> None:
        # callers guarantee: ids in range, no self-loops, no duplicate arcs
        n = int(node_count)
        tails = np.asarray(tails, dtype=np.int64)
        heads = np.asarray(heads, dtype=np.int64)
        self._n = n
        self._out_indptr, self._out_idx = _csr(n, tails * n + heads, tails, heads)
        self._in_indptr, self._in_idx = _csr(n, heads * n + tails, heads, tails)
        for a in (self._out_indptr, self._out_idx, self._in_indptr, self._in_idx):
            _frozen(a)
        self.labels: tuple[int, ...] = tuple(range(n)) if labels is None else tuple(int(x) for x in labels)
        if len(self.labels) != n:
            raise ValueError("labels must have one entry per node")
        self.source_ids: tuple[int, ...] | None = None if source_ids is None else tuple(source_ids)

    # -- sizes ---------------------------------------------------------
    @property
    def node_count(self) -> int:
        return self._n

    @property
    def arc_count(self) -> int:
        return int(self._out_idx.shape[0])

    def __len__(self) -> int:
        return self._n

    def __repr__(self) -> str:
        kind = type(self).__name__
        return f"{kind}(node_count={self._n}, arc_count={self.arc_count})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return (
            self._n == other._n
            and np.array_equal(self._out_indptr, other._out_indptr)
            and np.array_equal(self._out_idx, other._out_idx)
        )

    __hash__ = None  # type: ignore[assignment]

    def check_node(self, v: int) -> int:
        v = int(v)
        if not 0 <= v < self._n:
            raise IdOutOfRangeError(v, self._n)
        return v

    # -- degree arrays ---------------------------------------------------
    @cached_property
    def out_degrees(self) -> np.ndarray:
        return _frozen(np.diff(self._out_indptr))

    @cached_property
    def in_degrees(self) -> np.ndarray:
        return _frozen(np.diff(self._in_indptr))

    def out_degree(self, v: int) -> int:
        v = self.check_node(v)
        return int(self._out_indptr[v + 1] - self._out_indptr[v])

    def in_degree(self, v: int) -> int:
        v = self.check_node(v)
        return int(self._in_indptr[v + 1] - self._in_indptr[v])

    # -- adjacency ---------------------------------------------------------
    def out_neighbors(self, v: int) -> NeighborSet:
        v = self.check_node(v)
        return tuple(self._out_idx[self._out_indptr[v] : self._out_indptr[v + 1]].tolist())

    def in_neighbors(self, v: int) -> NeighborSet:
        v = self.check_node(v)
        return tuple(self._in_idx[self._in_indptr[v] : self._in_indptr[v + 1]].tolist())

    @cached_property
    def successors(self) -> tuple[NeighborSet, ...]:
        """All out-adjacency lists at once; built on first use."""
        flat = self._out_idx.tolist()
        ptr = self._out_indptr.tolist()
        return tuple(tuple(flat[ptr[v] : ptr[v + 1]]) for v in range(self._n))

    @cached_property
    def predecessors(self) -> tuple[NeighborSet, ...]:
        flat = self._in_idx.tolist()
        ptr = self._in_indptr.tolist()
        return tuple(tuple(flat[ptr[v] : ptr[v + 1]]) for v in range(self._n))

    @cached_property
    def successor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(s) for s in self.successors)

    def has_arc(self, u: int, v: int) -> bool:
        u = self.check_node(u)
        v = self.check_node(v)
        row = self._out_idx[self._out_indptr[u] : self._out_indptr[u + 1]]
        i = int(np.searchsorted(row, v))
        return i < row.shape[0] and int(row[i]) == v

    def arcs(self) -> Iterator[tuple[int, int]]:
        """Arcs in (tail, head) lexicographic order."""
        tails, heads = self.arc_arrays()
        return zip(tails.tolist(), heads.tolist())

    def arc_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        tails = np.repeat(np.arange(self._n, dtype=np.int64), self.out_degrees)
        return tails, self._out_idx

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Read-only (indptr, indices) of the out-adjacency."""
        return self._out_indptr, self._out_idx

    def csr_in(self) -> tuple[np.ndarray, np.ndarray]:
        return self._in_indptr, self._in_idx

    def label(self, v: int) -> int:
        return self.labels[v]


class OrientedGraph(Digraph):
    """Digraph with no self-loops and no pair of opposite arcs."""

    oriented = True


def _as_arc_array(arc_list) -> np.ndarray:
    if isinstance(arc_list, np.ndarray):
        arr = arc_list.astype(np.int64, copy=False)
    else:
        arr = np.array([(int(u), int(v)) for u, v in arc_list], dtype=np.int64)
    if arr.size == 0:
        return np.zeros((0, 2), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("arc list must be a sequence of (tail, head) pairs")
    return arr


def build_graph(
    node_count: int,
    arc_list: Iterable[tuple[int, int]] | np.ndarray,
    labels: Sequence[int] | None = None,
) -> OrientedGraph:
    """Validate an arc list and build an :class:`OrientedGraph`.

    Raises the first violation found, checking in this order: ids out of
    range, self-loops, duplicate arcs, symmetric pairs. Among several
    violations of one kind the lexicographically smallest is reported.
    """
    n = int(node_count)
    if n < 0:
        raise ValueError("node_count must be non-negative")
    arr = _as_arc_array(arc_list)
    tails, heads = arr[:, 0], arr[:, 1]
    bad = (tails < 0) | (tails >= n) | (heads < 0) | (heads >= n)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        node = int(tails[i]) if not 0 <= tails[i] < n else int(heads[i])
        raise IdOutOfRangeError(node, n)
    loops = tails == heads
    if loops.any():
        raise SelfLoopError(int(tails[loops].min()))
    keys = tails * n + heads
    skeys = np.sort(keys)
    dup = np.flatnonzero(np.diff(skeys) == 0)
    if dup.size:
        k = int(skeys[dup[0]])
        raise DuplicateArcError(k // n, k % n)
    sym = np.isin(heads * n + tails, skeys)
    if sym.any():
        lo = np.minimum(tails[sym], heads[sym])
        hi = np.maximum(tails[sym], heads[sym])
        k = int((lo * n + hi).min())
        raise SymmetricPairError(k // n, k % n)
    return OrientedGraph(n, tails, heads, labels=labels)


def out_neighbors(g: Digraph, v: int) -> NeighborSet:
    return g.out_neighbors(v)


def second_out_neighbors(g: Digraph, v: int) -> NeighborSet:
    """Nodes at directed distance exactly two from ``v``."""
    v = g.check_node(v)
    succ = g.successors
    first = succ[v]
    found = set().union(*(succ[w] for w in first))
    found.difference_update(first)
    found.discard(v)
    return tuple(sorted(found))


def induced_subgraph(g: OrientedGraph, nodes: Iterable[int]) -> OrientedGraph:
    """Subgraph on ``nodes``, re-indexed densely in ascending id order.

    ``result.source_ids[i]`` is the id in ``g`` of the new node ``i``; the
    labels are carried over from ``g``.
    """
    keep = sorted({g.check_node(v) for v in nodes})
    n = g.node_count
    remap = np.full(n, -1, dtype=np.int64)
    remap[np.asarray(keep, dtype=np.int64)] = np.arange(len(keep), dtype=np.int64)
    tails, heads = g.arc_arrays()
    mask = (remap[tails] >= 0) & (remap[heads] >= 0) if n else np.zeros(0, dtype=bool)
    cls = OrientedGraph if g.oriented else Digraph
    return cls(
        len(keep),
        remap[tails[mask]],
        remap[heads[mask]],
        labels=[g.labels[v] for v in keep],
        source_ids=keep,
    )


def adjacency_matrix(g: Digraph) -> sp.csr_matrix:
    indptr, idx = g.csr()
    data = np.ones(idx.shape[0], dtype=np.int64)
    return sp.csr_matrix((data, idx, indptr), shape=(g.node_count, g.node_count))


def square_graph(g: Digraph) -> Digraph:
    """G²: arc u->v iff the directed distance from u to v is 1 or 2.

    The result may contain opposite arcs, so it is a plain :class:`Digraph`.
    """
    a = adjacency_matrix(g)
    reach = (a + a @ a).tocoo()
    keep = reach.row != reach.col
    return Digraph(g.node_count, reach.row[keep], reach.col[keep], labels=g.labels)
