"""Seeded graph generators and the hand-transcribed named fixtures.

Random streams come from :func:`numpy.random.default_rng` (PCG64). For
``gen_random_oriented`` the unordered pairs (i, j), i < j, are visited in
lexicographic order; inclusion is decided by geometric skip lengths drawn
from the stream (equivalent to an independent Bernoulli(p) per pair), and
then one fair orientation bit is drawn per included pair, in the same order.
The same (n, p, seed) always yields the same graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .digraph import OrientedGraph, build_graph
from .errors import CycleTooShortError, UnknownFixtureError

_BATCH = 1 << 20


def _pair_from_index(k: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Map lexicographic linear indices of pairs (i < j) back to (i, j)."""
    # offset(i) = i*(2n-i-1)/2 is the index of pair (i, i+1)
    b = 2.0 * n - 1.0
    i = np.floor((b - np.sqrt(b * b - 8.0 * k.astype(np.float64))) / 2.0).astype(np.int64)
    i = np.clip(i, 0, max(n - 2, 0))

    def offset(r):
        return r * (2 * n - r - 1) // 2

    # float rounding can land one row off in either direction
    i -= offset(i) > k
    i += offset(i + 1) <= k
    j = k - offset(i) + i + 1
    return i, j


def _sample_pair_indices(total: int, p: float, rng: np.random.Generator) -> np.ndarray:
    if p <= 0.0 or total == 0:
        return np.zeros(0, dtype=np.int64)
    if p >= 1.0:
        return np.arange(total, dtype=np.int64)
    chunks = []
    pos = -1
    batch = min(_BATCH, int(total * p * 1.1) + 64)
    while True:
        # any gap past the end terminates; clipping keeps cumsum in int64
        gaps = np.minimum(rng.geometric(p, size=batch), total + 1)
        idx = pos + np.cumsum(gaps, dtype=np.int64)
        inside = idx < total
        if not inside.all():
            chunks.append(idx[inside])
            break
        chunks.append(idx)
        pos = int(idx[-1])
    return np.concatenate(chunks)


def gen_random_oriented(n: int, p: float, seed: int) -> OrientedGraph:
    """Each unordered pair kept with probability ``p``, oriented by a fair coin."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    total = n * (n - 1) // 2
    k = _sample_pair_indices(total, p, rng)
    i, j = _pair_from_index(k, n) if k.size else (k, k)
    flip = rng.integers(0, 2, size=k.shape[0]).astype(bool)
    tails = np.where(flip, j, i)
    heads = np.where(flip, i, j)
    return build_graph(n, np.stack([tails, heads], axis=1))


def gen_tournament(n: int, seed: int) -> OrientedGraph:
    return gen_random_oriented(n, 1.0, seed)


def gen_cycle(n: int) -> OrientedGraph:
    if n < 3:
        raise CycleTooShortError(f"a directed cycle needs at least 3 nodes, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


# nbr0ex: v0..v6 map to ids 0..6 (the figure places v1 and v3 at swapped
# positions; arcs follow the printed labels).
_NBR0EX = {0: (1, 2, 3), 3: (2, 1, 4, 5), 2: (1, 4, 5), 1: (4, 5, 6)}

_FURTHEREX = {
    0: (1, 2, 3),
    1: (2, 4, 5),
    2: (3, 4, 5),
    3: (1, 4, 5),
    4: (5, 6, 7),
    5: (6, 7, 8),
}

# Table rows with their printed neighborhood column; node 12 never appears.
IRRINT_TABLE: dict[int, tuple[tuple[int, ...], str | None]] = {
    0: ((1, 2, 3, 4, 5, 6), "R_0"),
    1: ((2, 3, 4, 8, 9, 10), "R_1"),
    2: ((3, 7, 8, 9, 10, 11), "R_1"),
    3: ((4, 7, 8, 9, 10, 11), "R_1"),
    4: ((5, 7, 8, 9, 10, 11), "R_2"),
    5: ((6, 7, 8, 9, 10, 11), "R_2"),
    6: ((1, 7, 8, 9, 10, 11), "R_3"),
    7: ((8, 13, 14, 15, 16), "R_3"),
    8: ((9, 13, 14, 15, 16), "R_3"),
    9: ((10, 13, 14, 15, 16), "R_3"),
    10: ((11, 13, 14, 15, 16), "R_3"),
    11: ((8, 13, 14, 15, 16), "R_3"),
    13: ((), None),
    14: ((), None),
    15: ((), None),
    16: ((), None),
}

_BACKTRI = [(0, 1), (0, 2), (1, 2), (1, 3), (3, 2)]

FIXTURE_NAMES = ("nbr0ex", "furtherex", "irrint", "cycle5", "backtri")


def _from_targets(node_count: int, targets: dict[int, tuple[int, ...]]) -> OrientedGraph:
    return build_graph(node_count, [(u, v) for u, vs in targets.items() for v in vs])


def irrint_graph() -> OrientedGraph:
    labels = sorted(IRRINT_TABLE)
    dense = {lab: i for i, lab in enumerate(labels)}
    arcs = [(dense[u], dense[v]) for u, (vs, _) in IRRINT_TABLE.items() for v in vs]
    return build_graph(len(labels), arcs, labels=labels)


def irrint_table_json() -> str:
    """The irrint table as a graph document, printed neighborhood column included."""
    doc = {}
    for lab in sorted(IRRINT_TABLE):
        targets, hood = IRRINT_TABLE[lab]
        entry: dict = {"targets": list(targets)}
        if hood is not None:
            entry["neighborhood"] = hood
        doc[str(lab)] = entry
    return json.dumps(doc, indent=2)


def fixture(name: str) -> OrientedGraph:
    if name == "nbr0ex":
        return _from_targets(7, _NBR0EX)
    if name == "furtherex":
        return _from_targets(9, _FURTHEREX)
    if name == "irrint":
        return irrint_graph()
    if name == "cycle5":
        return gen_cycle(5)
    if name == "backtri":
        return build_graph(5, _BACKTRI)
    raise UnknownFixtureError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")


Kind = Literal["random", "tournament", "cycle", "fixture"]


@dataclass(frozen=True)
class GenSpec:
    """Everything needed to regenerate one graph."""

    kind: Kind
    n: int = 0
    p: float = 0.5
    seed: int = 0
    name: str | None = None

    def build(self) -> OrientedGraph:
        if self.kind == "random":
            return gen_random_oriented(self.n, self.p, self.seed)
        if self.kind == "tournament":
            return gen_tournament(self.n, self.seed)
        if self.kind == "cycle":
            return gen_cycle(self.n)
        if self.kind == "fixture":
            return fixture(self.name or "")
        raise ValueError(f"unknown generator kind {self.kind!r}")
