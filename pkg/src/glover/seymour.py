"""Brute-force Seymour-vertex oracle and the small lemma predicates built on it.

A node v is a Seymour vertex (degree-doubling) when |N⁺⁺(v)| >= |N⁺(v)|;
the Decreasing Neighborhood Sequence Property (DNSP) is the strict negation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .digraph import Digraph, induced_subgraph, second_out_neighbors, square_graph
from .layering import TieBreak, min_out_degree_node


class SeymourRow(NamedTuple):
    node: int
    first_size: int
    second_size: int
    is_seymour: bool


@dataclass(frozen=True)
class SeymourReport:
    rows: tuple[SeymourRow, ...]

    @property
    def seymour_set(self) -> tuple[int, ...]:
        return tuple(r.node for r in self.rows if r.is_seymour)

    def __getitem__(self, v: int) -> SeymourRow:
        return self.rows[v]

    def is_seymour(self, v: int) -> bool:
        return self.rows[v].is_seymour

    @property
    def all_dnsp(self) -> bool:
        return not any(r.is_seymour for r in self.rows)


def second_sizes(g: Digraph) -> list[int]:
    """|N⁺⁺(v)| for every v by two-level expansion over the adjacency lists."""
    succ = g.successors
    sizes = []
    for v, first in enumerate(succ):
        reach: set[int] = set()
        for w in first:
            reach.update(succ[w])
        reach.difference_update(first)
        reach.discard(v)
        sizes.append(len(reach))
    return sizes


def seymour_oracle(g: Digraph) -> SeymourReport:
    first = g.out_degrees.tolist()
    second = second_sizes(g)
    return SeymourReport(
        tuple(SeymourRow(v, f, s, s >= f) for v, (f, s) in enumerate(zip(first, second)))
    )


class DnspStatus(NamedTuple):
    node: int
    holds: bool


def dnsp_holds(g: Digraph, v: int) -> DnspStatus:
    v = g.check_node(v)
    return DnspStatus(v, len(second_out_neighbors(g, v)) < g.out_degree(v))


class CoverCheck(NamedTuple):
    holds: bool
    witness: int | None


def interior_cover_holds(g: Digraph, u: int) -> CoverCheck:
    """Is every out-neighbor of ``u`` also hit by another out-neighbor of ``u``?

    When it is, N⁺(u) equals the union of N⁺(u) ∩ N⁺(v) over v in N⁺(u);
    that equality is asserted before returning.
    """
    u = g.check_node(u)
    first = g.out_neighbors(u)
    fs = set(first)
    for x in first:
        if not any(v in fs for v in g.in_neighbors(x)):
            return CoverCheck(False, x)
    union = set()
    for v in first:
        union.update(w for w in g.out_neighbors(v) if w in fs)
    assert union == fs, "interior cover equality failed with its premise satisfied"
    return CoverCheck(True, None)


def exterior_cover_holds(g: Digraph, u: int) -> CoverCheck:
    u = g.check_node(u)
    first = g.out_neighbors(u)
    fs = set(first)
    second = second_out_neighbors(g, u)
    for x in second:
        if not any(v in fs for v in g.in_neighbors(x)):
            return CoverCheck(False, x)
    ss = set(second)
    union = set()
    for v in first:
        union.update(w for w in g.out_neighbors(v) if w in ss)
    assert union == ss, "exterior cover equality failed with its premise satisfied"
    return CoverCheck(True, None)


def square_doubling_set(g: Digraph) -> tuple[int, ...]:
    """Nodes whose out-degree in G² is at least twice their out-degree in G."""
    sq = square_graph(g).out_degrees
    return tuple(np.flatnonzero(sq >= 2 * g.out_degrees).tolist())


def square_equivalence_check(g: Digraph) -> bool:
    return square_doubling_set(g) == seymour_oracle(g).seymour_set


class Implication(NamedTuple):
    premise: bool
    conclusion: bool

    @property
    def violated(self) -> bool:
        return self.premise and not self.conclusion


def lemma_low_degree(g: Digraph, tie_break: TieBreak | str = TieBreak.LOWEST_ID) -> Implication:
    """δ <= 2 implies the chosen minimum out-degree node is Seymour."""
    v0 = min_out_degree_node(g, tie_break)
    premise = g.out_degree(v0) <= 2
    return Implication(premise, seymour_oracle(g).is_seymour(v0) if premise else True)


def _neighbor_induced_out_degrees(g: Digraph, v0: int) -> list[int]:
    sub = induced_subgraph(g, g.out_neighbors(v0))
    return sub.out_degrees.tolist()


def lemma_isolated_neighbor(g: Digraph) -> Implication:
    """δ = 3 and some out-neighbor of v0 has no arc inside G[N⁺(v0)] ⇒ v0 Seymour."""
    if g.node_count == 0:
        return Implication(False, True)
    v0 = min_out_degree_node(g)
    premise = g.out_degree(v0) == 3 and 0 in _neighbor_induced_out_degrees(g, v0)
    return Implication(premise, seymour_oracle(g).is_seymour(v0) if premise else True)


def lemma_unit_neighbors(g: Digraph) -> Implication:
    """δ = 3 and every out-neighbor of v0 has out-degree 1 inside G[N⁺(v0)]
    ⇒ v0 or one of its out-neighbors is Seymour."""
    if g.node_count == 0:
        return Implication(False, True)
    v0 = min_out_degree_node(g)
    premise = g.out_degree(v0) == 3 and all(d == 1 for d in _neighbor_induced_out_degrees(g, v0))
    if not premise:
        return Implication(False, True)
    report = seymour_oracle(g)
    ok = report.is_seymour(v0) or any(report.is_seymour(x) for x in g.out_neighbors(v0))
    return Implication(True, ok)


def exterior_load_balance_violations(g: Digraph) -> list[tuple[int, int, int]]:
    """(x, y, |ext(x, y)|) for DNSP nodes x whose exterior through y reaches d⁺(x)."""
    out = []
    succ = g.successors
    for x, first in enumerate(succ):
        second = set(second_out_neighbors(g, x))
        if len(second) >= len(first):
            continue
        for y in first:
            ext = sum(1 for w in succ[y] if w in second)
            if ext >= len(first):
                out.append((x, y, ext))
    return out
