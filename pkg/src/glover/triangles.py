"""Transitive triangles, Seymour diamonds, and their classification in a layering.

A transitive triangle (x, y, z) has arcs x->y, x->z and y->z. Relative to a
layering each of its three arcs is forward, lateral or back, and the triple of
classes (x->y, x->z, y->z) decides the type:

    lateral  lateral  lateral   INTERIOR
    forward  forward  lateral   INTERIOR_EXTERIOR
    lateral  forward  forward   EXTERIOR
    back     back     lateral   BACK_ARC_I
    lateral  back     back      BACK_ARC_I
    forward  lateral  back      BACK_ARC_II
    back     lateral  forward   BACK_ARC_II
    forward  back     back      BACK_ARC_III
    back     back     forward   BACK_ARC_III

The only other pattern BFS distances allow is back/back/back (source farther
from the root than the middle node, middle farther than the sink). It fits
none of the six types and is reported as unclassifiable.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import NamedTuple

from .digraph import Digraph
from .errors import UnclassifiableTriangleError, UnreachableNodeError
from .layering import UNREACHED, RootedLayering


class TriangleType(str, enum.Enum):
    INTERIOR = "interior"  # case 1
    BACK_ARC_I = "back-arc-i"  # case 3
    INTERIOR_EXTERIOR = "interior-exterior"  # case 4
    BACK_ARC_II = "back-arc-ii"  # case 5
    BACK_ARC_III = "back-arc-iii"  # case 6
    EXTERIOR = "exterior"  # case 7


class TransitiveTriangle(NamedTuple):
    x: int
    y: int
    z: int


class SeymourDiamond(NamedTuple):
    x: int
    y1: int
    y2: int
    z: int


_F, _L, _B = "F", "L", "B"

_PATTERNS = {
    (_L, _L, _L): TriangleType.INTERIOR,
    (_F, _F, _L): TriangleType.INTERIOR_EXTERIOR,
    (_L, _F, _F): TriangleType.EXTERIOR,
    (_B, _B, _L): TriangleType.BACK_ARC_I,
    (_L, _B, _B): TriangleType.BACK_ARC_I,
    (_F, _L, _B): TriangleType.BACK_ARC_II,
    (_B, _L, _F): TriangleType.BACK_ARC_II,
    (_F, _B, _B): TriangleType.BACK_ARC_III,
    (_B, _B, _F): TriangleType.BACK_ARC_III,
}


def enumerate_transitive_triangles(g: Digraph) -> list[TransitiveTriangle]:
    """Every transitive triangle once, sorted by (x, y, z)."""
    succ = g.successors
    sets = g.successor_sets
    out = []
    for x, first in enumerate(succ):
        fx = sets[x]
        for y in first:
            for z in succ[y]:
                if z in fx:
                    out.append(TransitiveTriangle(x, y, z))
    return out


def transitive_triangles_bruteforce(g: Digraph) -> list[TransitiveTriangle]:
    """O(n³) reference enumeration over all ordered triples."""
    n = g.node_count
    sets = g.successor_sets
    out = []
    for a, b, c in combinations(range(n), 3):
        for x, y, z in permutations((a, b, c)):
            if y in sets[x] and z in sets[x] and z in sets[y]:
                out.append(TransitiveTriangle(x, y, z))
    return sorted(out)


def _cls(du: int, dv: int) -> str:
    if dv == du + 1:
        return _F
    if dv == du:
        return _L
    return _B


def triangle_pattern(l: RootedLayering, t: TransitiveTriangle) -> tuple[str, str, str]:
    dx, dy, dz = (int(l.depth[v]) for v in t)
    if UNREACHED in (dx, dy, dz):
        raise UnreachableNodeError(f"triangle {tuple(t)} touches an unreachable node")
    return _cls(dx, dy), _cls(dx, dz), _cls(dy, dz)


def classify_triangle(l: RootedLayering, t: TransitiveTriangle) -> TriangleType:
    pattern = triangle_pattern(l, t)
    try:
        return _PATTERNS[pattern]
    except KeyError:
        raise UnclassifiableTriangleError(tuple(t), "".join(pattern)) from None


@dataclass
class TriangleCensus:
    counts: Counter = field(default_factory=Counter)
    unclassifiable: list[TransitiveTriangle] = field(default_factory=list)
    unreachable: int = 0

    @property
    def classified(self) -> int:
        return sum(self.counts.values())

    @property
    def total(self) -> int:
        return self.classified + len(self.unclassifiable) + self.unreachable

    def as_dict(self) -> dict:
        return {
            "counts": {t.value: self.counts.get(t, 0) for t in TriangleType},
            "classified": self.classified,
            "unclassifiable": len(self.unclassifiable),
            "unclassifiable_triangles": [list(t) for t in self.unclassifiable],
            "unreachable": self.unreachable,
            "total": self.total,
        }


def census_of(l: RootedLayering, triangles) -> TriangleCensus:
    census = TriangleCensus()
    for t in triangles:
        try:
            census.counts[classify_triangle(l, t)] += 1
        except UnreachableNodeError:
            census.unreachable += 1
        except UnclassifiableTriangleError:
            census.unclassifiable.append(t)
    return census


def triangle_census(g: Digraph, l: RootedLayering) -> TriangleCensus:
    return census_of(l, enumerate_transitive_triangles(g))


def enumerate_seymour_diamonds(g: Digraph) -> list[SeymourDiamond]:
    """All (x, y1, y2, z) with x->y1, x->y2, y1->z, y2->z and y1 < y2, x != z."""
    succ = g.successors
    out = []
    for x, first in enumerate(succ):
        hits: dict[int, list[int]] = {}
        for y in first:
            for z in succ[y]:
                if z != x:
                    hits.setdefault(z, []).append(y)
        for z, ys in hits.items():
            for y1, y2 in combinations(sorted(ys), 2):
                out.append(SeymourDiamond(x, y1, y2, z))
    return sorted(out)
