"""Evaluate the load-balancing and neighborhood-size lemmas on a concrete graph.

Each claim is read as a material conditional. A claim is ``violated`` when
some instance satisfies the premise but not the conclusion, ``holds`` when at
least one instance satisfies the premise and none violate it, and
``not-applicable`` when no instance satisfies the premise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

from .digraph import Digraph, second_out_neighbors
from .layering import (
    RootedLayering,
    TieBreak,
    build_layering,
    interior_doubles,
    min_out_degree_node,
)
from .seymour import SeymourReport, seymour_oracle

MAX_WITNESSES = 25

CLAIM_IDS = (
    "int_min1",
    "ext_bd1",
    "del",
    "genloadbal",
    "nbhsize",
    "nbhsizefmla",
    "nbacase1",
    "prop1",
    "prop2",
    "edd",
)


class ClaimStatus(str, enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    NOT_APPLICABLE = "not-applicable"


@dataclass
class ClaimRecord:
    claim: str
    instances: int = 0
    premise_instances: int = 0
    violations: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def premise_holds(self) -> bool:
        return self.premise_instances > 0

    @property
    def conclusion_holds(self) -> bool:
        return self.violations == 0

    @property
    def status(self) -> ClaimStatus:
        if not self.premise_holds:
            return ClaimStatus.NOT_APPLICABLE
        return ClaimStatus.VIOLATED if self.violations else ClaimStatus.HOLDS

    def observe(self, premise: bool, conclusion: Callable[[], bool], witness: Callable[[], object]) -> None:
        """Record one instance; ``conclusion`` is evaluated only under the premise."""
        self.instances += 1
        if not premise:
            return
        self.premise_instances += 1
        if not conclusion():
            self.violations += 1
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(witness())

    def as_dict(self) -> dict:
        return {
            "claim": self.claim,
            "status": self.status.value,
            "premise_holds": self.premise_holds,
            "conclusion_holds": self.conclusion_holds,
            "instances": self.instances,
            "premise_instances": self.premise_instances,
            "violations": self.violations,
            "witnesses": self.witnesses,
        }


@dataclass(frozen=True)
class ClaimReport:
    root: int
    records: tuple[ClaimRecord, ...]

    def __getitem__(self, claim: str) -> ClaimRecord:
        for r in self.records:
            if r.claim == claim:
                return r
        raise KeyError(claim)

    @property
    def violated(self) -> list[str]:
        return [r.claim for r in self.records if r.status is ClaimStatus.VIOLATED]

    def as_dict(self) -> dict:
        return {"root": self.root, "claims": [r.as_dict() for r in self.records]}


class _Ctx:
    """Shared lazily computed facts about one (graph, layering) pair."""

    def __init__(self, g: Digraph, l: RootedLayering, oracle: SeymourReport):
        self.g = g
        self.l = l
        self.oracle = oracle
        self.succ = g.successors
        self.pred = g.predecessors
        self.depth = l.depth.tolist()
        self.delta = g.out_degree(l.root)
        self.root_is_min = self.delta == int(g.out_degrees.min())
        self.no_back = len(l.back_tails) == 0
        self.all_dnsp = oracle.all_dnsp
        self._second: dict[int, frozenset[int]] = {}
        self._doubles: dict[int, bool] = {}

    def dnsp(self, v: int) -> bool:
        return not self.oracle.is_seymour(v)

    def second(self, v: int) -> frozenset[int]:
        s = self._second.get(v)
        if s is None:
            s = self._second[v] = frozenset(second_out_neighbors(self.g, v))
        return s

    def int_size(self, u: int, v: int) -> int:
        su = self.g.successor_sets[u]
        return sum(1 for w in self.succ[v] if w in su)

    def ext(self, u: int, v: int) -> list[int]:
        s = self.second(u)
        return [w for w in self.succ[v] if w in s]

    def doubles(self, v: int) -> bool:
        d = self._doubles.get(v)
        if d is None:
            d = self._doubles[v] = interior_doubles(self.l, v)
        return d

    def parent_child(self):
        """All arcs u->v with depth(v) = depth(u) + 1, in (layer, u, v) order."""
        for i, layer in enumerate(self.l.layers[:-1]):
            for u in sorted(layer):
                for v in self.succ[u]:
                    if self.depth[v] == i + 1:
                        yield i, u, v

    def parents(self, v: int) -> list[int]:
        want = self.depth[v] - 1
        return [p for p in self.pred[v] if self.depth[p] == want]


def _int_min1(c: _Ctx) -> ClaimRecord:
    rec = ClaimRecord("int_min1")
    r = c.l.root
    layer1 = c.l.layers[1] if c.l.k >= 1 else ()
    bad = lambda: [x for x in layer1 if c.int_size(r, x) < 1]  # noqa: E731
    rec.observe(
        c.root_is_min and c.dnsp(r),
        lambda: not bad(),
        lambda: {"root": r, "zero_interior": bad()},
    )
    return rec


def _ext_bd1(c: _Ctx) -> ClaimRecord:
    rec = ClaimRecord("ext_bd1")
    for x, first in enumerate(c.succ):
        d = len(first)
        over = lambda: [(y, len(c.ext(x, y))) for y in first if len(c.ext(x, y)) >= d]  # noqa: E731
        rec.observe(c.dnsp(x), lambda: not over(), lambda: {"node": x, "out_degree": d, "over": over()})
    return rec


def _del(c: _Ctx) -> ClaimRecord:
    rec = ClaimRecord("del")
    for _, u, v in c.parent_child():
        premise = c.no_back and c.dnsp(u) and c.dnsp(v) and c.doubles(v)
        if not premise:
            rec.observe(False, bool, dict)
            continue
        e = c.ext(u, v)
        bad = [z for z in e if len(c.ext(v, z)) >= len(e)]
        rec.observe(True, lambda: not bad, lambda: {"arc": [u, v], "ext_size": len(e), "z": bad})
    return rec


def _genloadbal(c: _Ctx) -> ClaimRecord:
    rec = ClaimRecord("genloadbal")
    premise = c.all_dnsp and c.no_back and c.root_is_min

    def bad():
        return [[u, v, i + 1, c.int_size(u, v)] for i, u, v in c.parent_child() if c.int_size(u, v) < i + 1]

    rec.observe(premise, lambda: not bad(), lambda: {"failing": bad()})
    return rec


def _nbhsize(c: _Ctx) -> ClaimRecord:
    rec = ClaimRecord("nbhsize")
    premise = c.all_dnsp and c.no_back and c.root_is_min

    def bad():
        reach: dict[int, set[int]] = {}
        for i, u, v in c.parent_child():
            reach.setdefault(i, set()).update(y for y in c.ext(u, v) if c.depth[y] == i + 2)
        return [[i, len(ys), c.delta - i] for i, ys in sorted(reach.items()) if len(ys) > c.delta - i]

    rec.observe(premise, lambda: not bad(), lambda: {"failing": bad()})
    return rec


def _nbhsizefmla(c: _Ctx) -> ClaimRecord:
    rec = ClaimRecord("nbhsizefmla")
    sizes = c.l.sizes()

    def bad():
        out = []
        if sizes[0] != 1:
            out.append([0, sizes[0], 1])
        if len(sizes) > 1 and sizes[1] != c.delta:
            out.append([1, sizes[1], c.delta])
        out.extend([i, s, c.delta - (i - 1)] for i, s in enumerate(sizes) if i >= 2 and s > c.delta - (i - 1))
        return out

    rec.observe(c.all_dnsp and c.root_is_min, lambda: not bad(), lambda: {"sizes": sizes, "failing": bad()})
    return rec


def _nbacase1(c: _Ctx) -> ClaimRecord:
    rec = ClaimRecord("nbacase1")
    heads: dict[int, list[int]] = {}
    for t, h in zip(c.l.back_tails.tolist(), c.l.back_heads.tolist()):
        heads.setdefault(t, []).append(h)
    for u in sorted(heads):
        vk = min(heads[u], key=lambda h: (-c.depth[h], h))
        n2 = len(c.second(u))
        rec.observe(
            c.doubles(u),
            lambda: n2 >= c.g.out_degree(vk) and c.oracle.is_seymour(u),
            lambda: {
                "back_arc": [u, vk],
                "second_size": n2,
                "head_out_degree": c.g.out_degree(vk),
                "out_degree": c.g.out_degree(u),
            },
        )
    return rec


def _prop1(c: _Ctx) -> ClaimRecord:
    rec = ClaimRecord("prop1")
    for i, p1, u in c.parent_child():
        need = i + 1
        premise = c.int_size(p1, u) < need

        def passing_parents():
            return [p for p in c.parents(u) if c.int_size(p, u) >= need]

        def non_seymour():
            return [x for x in c.l.layers[i] if not c.oracle.is_seymour(x)]

        rec.observe(
            premise,
            lambda: not passing_parents() and not non_seymour(),
            lambda: {
                "parent": p1,
                "child": u,
                "passing_parents": passing_parents(),
                "non_seymour_in_layer": non_seymour(),
            },
        )
    return rec


def _prop2(c: _Ctx) -> ClaimRecord:
    rec = ClaimRecord("prop2")
    for i in range(1, c.l.k + 1):
        for p1 in c.l.layers[i - 1]:
            kids = [v for v in c.succ[p1] if c.depth[v] == i]
            premise = bool(kids) and all(c.int_size(p1, v) >= i for v in kids)

            def failing():
                return sorted({(p, v) for v in kids for p in c.parents(v) if c.int_size(p, v) < i})

            def seymour_in_layer():
                return [x for x in c.l.layers[i - 1] if c.oracle.is_seymour(x)]

            rec.observe(
                premise,
                lambda: not failing() and not seymour_in_layer(),
                lambda: {
                    "parent": p1,
                    "layer": i,
                    "failing_pairs": [list(x) for x in failing()],
                    "seymour_in_layer": seymour_in_layer(),
                },
            )
    return rec


def _edd(c: _Ctx) -> ClaimRecord:
    rec = ClaimRecord("edd")
    layers = c.l.layers
    for i, p, u in c.parent_child():
        j = i + 1  # u is in R_j
        nxt = set(layers[j + 1]) if j + 1 < len(layers) else set()
        after = len(layers[j + 2]) if j + 2 < len(layers) else 0
        premise = (
            c.no_back
            and bool(nxt)
            and len(nxt) >= after
            and set(c.ext(p, u)) == nxt
            and c.doubles(u)
        )
        rec.observe(
            premise,
            lambda: c.oracle.is_seymour(u),
            lambda: {
                "arc": [p, u],
                "first_size": c.g.out_degree(u),
                "second_size": len(c.second(u)),
            },
        )
    return rec


_CHECKS = (
    _int_min1, _ext_bd1, _del, _genloadbal, _nbhsize,
    _nbhsizefmla, _nbacase1, _prop1, _prop2, _edd,
)


def check_paper_claims(
    g: Digraph,
    root: int | None = None,
    *,
    tie_break: TieBreak | str = TieBreak.LOWEST_ID,
    oracle: SeymourReport | None = None,
) -> ClaimReport:
    """Evaluate every claim in :data:`CLAIM_IDS` on ``g`` rooted at ``root``.

    The root defaults to the minimum out-degree node. Nothing is mutated and
    no claim short-circuits another.
    """
    if root is None:
        root = min_out_degree_node(g, tie_break)
    l = build_layering(g, root)
    c = _Ctx(g, l, oracle if oracle is not None else seymour_oracle(g))
    return ClaimReport(l.root, tuple(check(c) for check in _CHECKS))
