"""Wall-clock timing of layering plus the DNSA scan on sparse random graphs."""

from __future__ import annotations

import gc
import time
from dataclasses import asdict, dataclass
from typing import Sequence

from .dnsa import run_dnsa
from .generators import gen_random_oriented
from .layering import build_layering

DEFAULT_SIZES = (10_000, 100_000, 1_000_000)


@dataclass(frozen=True)
class BenchRow:
    n: int
    m: int
    layering_seconds: float
    dnsa_seconds: float
    halt_reason: str

    @property
    def total_seconds(self) -> float:
        return self.layering_seconds + self.dnsa_seconds

    @property
    def ns_per_element(self) -> float:
        return 1e9 * self.total_seconds / max(self.n + self.m, 1)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["total_seconds"] = self.total_seconds
        d["ns_per_element"] = self.ns_per_element
        return d


def edge_probability(n: int, avg_arcs: float) -> float:
    """p giving about ``avg_arcs * n`` arcs in expectation."""
    pairs = n * (n - 1) / 2
    return min(1.0, avg_arcs * n / pairs) if pairs else 0.0


def time_one(n: int, avg_arcs: float = 5.0, seed: int = 0, repeats: int = 3, root: int = 0) -> BenchRow:
    """Best-of-``repeats`` timing; graph generation is not timed."""
    g = gen_random_oriented(n, edge_probability(n, avg_arcs), seed)
    best = None
    for _ in range(max(1, repeats)):
        gc.collect()
        t0 = time.perf_counter()
        l = build_layering(g, root)
        t1 = time.perf_counter()
        res = run_dnsa(g, layering=l)
        t2 = time.perf_counter()
        if best is None or t2 - t0 < best[0] + best[1]:
            best = (t1 - t0, t2 - t1, res.halt_reason.value)
        del l
    return BenchRow(n, g.arc_count, *best)


def run_bench(
    sizes: Sequence[int] = DEFAULT_SIZES, avg_arcs: float = 5.0, seed: int = 0, repeats: int = 3
) -> list[BenchRow]:
    return [time_one(n, avg_arcs, seed, repeats) for n in sizes]


def scaling_spread(rows: Sequence[BenchRow]) -> float:
    """max / min of time per (|V| + |E|) across rows."""
    per = [r.ns_per_element for r in rows]
    return max(per) / min(per)
