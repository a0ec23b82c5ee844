from __future__ import annotations

from collections import deque

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from glover.digraph import build_graph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def oriented_graphs(draw, max_nodes: int = 12, min_nodes: int = 0):
    """Random oriented graph: each pair absent, forward or backward."""
    n = draw(st.integers(min_nodes, max_nodes))
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            choice = draw(st.integers(0, 2))
            if choice == 1:
                arcs.append((i, j))
            elif choice == 2:
                arcs.append((j, i))
    return build_graph(n, arcs)


def nonempty_graphs(max_nodes: int = 12):
    return oriented_graphs(max_nodes=max_nodes, min_nodes=1)


# -- independent reference implementations -------------------------------


def ref_distances(g, source: int) -> dict[int, int]:
    adj = {v: [] for v in range(g.node_count)}
    for u, v in g.arcs():
        adj[u].append(v)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def ref_at_distance(g, v: int, k: int) -> set[int]:
    return {w for w, d in ref_distances(g, v).items() if d == k}


@pytest.fixture
def arcs_of():
    return lambda g: sorted(g.arcs())
