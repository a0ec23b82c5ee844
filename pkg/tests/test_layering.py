import pytest
from hypothesis import given
from hypothesis import strategies as st

from glover.digraph import build_graph, induced_subgraph, second_out_neighbors
from glover.errors import (
    BoundaryOutOfRangeError,
    EmptyGraphError,
    IdOutOfRangeError,
    NotAnArcError,
    NotParentChildError,
)
from glover.generators import fixture
from glover.layering import (
    ArcClass,
    BackArc,
    TieBreak,
    arc_class,
    build_layering,
    exterior_set_definitional,
    interior_doubles,
    interior_set_definitional,
    is_parent_child,
    layer_size_sequence,
    min_out_degree_node,
    neighbor_partition,
    path_from_root,
    split_layers,
)

from .conftest import nonempty_graphs, oriented_graphs, ref_distances


def as_sets(layers):
    return [set(x) for x in layers]


class TestMinOutDegree:
    def test_cycle(self):
        assert min_out_degree_node(fixture("cycle5")) == 0

    def test_sinks_tie_lowest_id(self):
        assert min_out_degree_node(fixture("furtherex")) == 6
        assert min_out_degree_node(fixture("nbr0ex")) == 4

    def test_highest_in_degree(self):
        g = build_graph(4, [(0, 1), (2, 3), (0, 3), (1, 3)])
        assert min_out_degree_node(g, TieBreak.HIGHEST_IN_DEGREE) == 3
        assert min_out_degree_node(g, "lowest-id") == 3

    def test_empty(self):
        with pytest.raises(EmptyGraphError):
            min_out_degree_node(build_graph(0, []))


class TestBuildLayering:
    def test_furtherex(self):
        l = build_layering(fixture("furtherex"), 0)
        assert as_sets(l.layers) == [{0}, {1, 2, 3}, {4, 5}, {6, 7, 8}]
        assert l.back_arcs == ()

    def test_nbr0ex(self):
        l = build_layering(fixture("nbr0ex"), 0)
        assert as_sets(l.layers) == [{0}, {1, 2, 3}, {4, 5, 6}]
        assert l.back_arcs == ()
        # out-degree descending: v3 (4) then v1, v2 (3) by id
        assert l.layers[1] == (3, 1, 2)

    def test_backtri(self):
        l = build_layering(fixture("backtri"), 0)
        assert as_sets(l.layers) == [{0}, {1, 2}, {3}]
        assert l.back_arcs == (BackArc(3, 2, 1),)
        assert l.unreachable == (4,)
        assert l.distance(4) is None and l.distance(3) == 2

    def test_bad_root(self):
        with pytest.raises(IdOutOfRangeError):
            build_layering(fixture("cycle5"), 5)

    @given(nonempty_graphs(), st.data())
    def test_matches_reference_bfs(self, g, data):
        root = data.draw(st.integers(0, g.node_count - 1))
        l = build_layering(g, root)
        ref = ref_distances(g, root)
        assert l.dist == tuple(ref.get(v) for v in range(g.node_count))
        assert l.layers[0] == (root,)
        seen = [v for layer in l.layers for v in layer] + list(l.unreachable)
        assert sorted(seen) == list(range(g.node_count))
        for i, layer in enumerate(l.layers):
            key = [(-g.out_degree(v), v) for v in layer]
            assert key == sorted(key)
            assert all(ref[v] == i for v in layer)

    @given(nonempty_graphs(), st.data())
    def test_no_forward_skip_and_back_arcs(self, g, data):
        root = data.draw(st.integers(0, g.node_count - 1))
        l = build_layering(g, root)
        expect_back = []
        for u, v in g.arcs():
            du, dv = l.distance(u), l.distance(v)
            if du is None:
                continue
            assert dv is not None and dv <= du + 1
            if dv < du:
                expect_back.append((u, v, du - dv))
        assert [tuple(b) for b in l.back_arcs] == expect_back


class TestArcClass:
    def test_examples(self):
        l = build_layering(fixture("furtherex"), 0)
        assert arc_class(l, 1, 4) is ArcClass.FORWARD
        assert arc_class(l, 1, 2) is ArcClass.LATERAL
        lb = build_layering(fixture("backtri"), 0)
        assert arc_class(lb, 3, 2) is ArcClass.BACK

    def test_from_unreachable(self):
        g = build_graph(3, [(0, 1), (2, 1)])
        assert arc_class(build_layering(g, 0), 2, 1) is ArcClass.FROM_UNREACHABLE

    def test_not_an_arc(self):
        with pytest.raises(NotAnArcError):
            arc_class(build_layering(fixture("furtherex"), 0), 4, 1)


class TestPartition:
    def test_furtherex(self):
        p = neighbor_partition(build_layering(fixture("furtherex"), 0), 0, 1)
        assert (set(p.interior), set(p.exterior), p.back) == ({2}, {4, 5}, ())

    def test_nbr0ex(self):
        p = neighbor_partition(build_layering(fixture("nbr0ex"), 0), 0, 1)
        assert (p.interior, set(p.exterior), p.back) == ((), {4, 5, 6}, ())

    def test_backtri(self):
        p = neighbor_partition(build_layering(fixture("backtri"), 0), 1, 3)
        assert (p.interior, p.exterior, p.back) == ((), (), (2,))

    def test_not_parent_child(self):
        l = build_layering(fixture("furtherex"), 0)
        with pytest.raises(NotParentChildError):
            neighbor_partition(l, 1, 2)  # lateral
        with pytest.raises(NotParentChildError):
            neighbor_partition(l, 0, 4)  # no arc

    @given(nonempty_graphs(), st.data())
    def test_totality_and_exterior_audit(self, g, data):
        root = data.draw(st.integers(0, g.node_count - 1))
        l = build_layering(g, root)
        for u, v in g.arcs():
            if not is_parent_child(l, u, v):
                continue
            p = neighbor_partition(l, u, v)
            parts = [set(p.interior), set(p.exterior), set(p.back)]
            assert sum(map(len, parts)) == g.out_degree(v)
            assert set().union(*parts) == set(g.out_neighbors(v))
            assert set(p.interior) <= set(g.out_neighbors(u))
            # case-rule exterior never exceeds the distance-2 definition;
            # any extra definitional members are back-arc heads
            ext_def = set(exterior_set_definitional(g, u, v))
            assert set(p.exterior) <= ext_def
            assert ext_def - set(p.exterior) <= set(p.back)
            if not l.back_arcs:
                assert set(p.exterior) == ext_def


class TestDefinitionalSets:
    def test_examples(self):
        assert exterior_set_definitional(fixture("furtherex"), 0, 1) == (4, 5)
        assert exterior_set_definitional(fixture("cycle5"), 0, 1) == (2,)
        assert exterior_set_definitional(build_graph(2, [(0, 1)]), 0, 1) == ()
        assert interior_set_definitional(fixture("furtherex"), 0, 1) == (2,)

    def test_not_an_arc(self):
        with pytest.raises(NotAnArcError):
            exterior_set_definitional(fixture("furtherex"), 1, 0)

    @given(oriented_graphs())
    def test_subset_of_second(self, g):
        for u, v in g.arcs():
            assert set(exterior_set_definitional(g, u, v)) <= set(second_out_neighbors(g, u))


class TestSizes:
    def test_furtherex(self):
        s = layer_size_sequence(build_layering(fixture("furtherex"), 0))
        assert s.sizes == (1, 3, 2, 3)
        assert s.delta == 3
        assert s.bound_ok == (True, True, False)

    def test_cycle(self):
        assert layer_size_sequence(build_layering(fixture("cycle5"), 0)).sizes == (1,) * 5

    def test_single_node(self):
        assert layer_size_sequence(build_layering(build_graph(1, []), 0)).sizes == (1,)


class TestSplit:
    def test_furtherex(self):
        s = split_layers(build_layering(fixture("furtherex"), 0), 2)
        assert (s.group_a, s.buffer, s.group_b, s.crossing) == ((0, 1, 2, 3), (4, 5), (6, 7, 8), ())

    def test_cycle(self):
        s = split_layers(build_layering(fixture("cycle5"), 0), 2)
        assert (s.group_a, s.buffer, s.group_b) == ((0, 1), (2,), (3, 4))
        assert s.crossing == ((4, 0),) and s.interference == 1

    def test_last_boundary_leaves_unreachable(self):
        l = build_layering(fixture("backtri"), 0)
        assert split_layers(l, l.k).group_b == l.unreachable

    def test_out_of_range(self):
        l = build_layering(fixture("furtherex"), 0)
        for b in (0, 4):
            with pytest.raises(BoundaryOutOfRangeError):
                split_layers(l, b)

    @given(nonempty_graphs(), st.data())
    def test_short_back_arcs_never_cross(self, g, data):
        l = build_layering(g, data.draw(st.integers(0, g.node_count - 1)))
        if l.k < 1 or any(b.delta > 1 for b in l.back_arcs):
            return
        for b in range(1, l.k + 1):
            s = split_layers(l, b)
            # only arcs touching unreachable nodes may still cross
            assert all(not l.reachable(u) or not l.reachable(v) for u, v in s.crossing)


class TestMisc:
    def test_induced_subgraph_edges(self):
        g = fixture("furtherex")
        sub = induced_subgraph(g, {1, 2, 3})
        assert sorted(sub.arcs()) == [(0, 1), (1, 2), (2, 0)]
        assert induced_subgraph(g, set()).node_count == 0
        assert induced_subgraph(g, range(9)) == g

    def test_interior_doubles(self):
        l = build_layering(fixture("furtherex"), 0)
        # R_1 is the 3-cycle 1->2->3->1: one interior out-neighbor, one at distance 2
        assert all(interior_doubles(l, v) for v in (1, 2, 3))

    def test_path_from_root(self):
        l = build_layering(fixture("furtherex"), 0)
        # 8 has a single parent (5); 5 picks the lowest-id parent among 1, 2, 3
        assert path_from_root(l, 8) == [0, 1, 5, 8]
        assert path_from_root(l, 0) == [0]

    @given(nonempty_graphs(), st.data())
    def test_path_follows_arcs(self, g, data):
        l = build_layering(g, data.draw(st.integers(0, g.node_count - 1)))
        for layer in l.layers:
            for v in layer:
                path = path_from_root(l, v)
                assert path[0] == l.root and path[-1] == v
                assert len(path) == l.distance(v) + 1
                assert all(g.has_arc(a, b) for a, b in zip(path, path[1:]))
