from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import G_REF_EDGES, g_ref
from lrplanarity import HalfEdge, LoopEdge, VertexOutOfRange, build_graph, connected_components


def test_single_vertex_edgeless():
    g = build_graph(1, [])
    assert (g.n, g.m) == (1, 0)
    assert g.incidence(0) == []


def test_fixture_counts():
    g = g_ref()
    assert (g.n, g.m) == (10, 17)
    assert g.edge_list() == G_REF_EDGES


def test_parallel_edges_are_distinct():
    g = build_graph(2, [(1, 2), (1, 2), (1, 2)])
    assert g.m == 3
    assert [e for e, _ in g.incidence(0)] == [0, 1, 2]
    assert g.degree(1) == 3


def test_loop_rejected():
    with pytest.raises(LoopEdge) as exc:
        build_graph(3, [(1, 2), (3, 3)])
    assert exc.value.vertex == 2


@pytest.mark.parametrize("pairs", [[(0, 1)], [(1, 4)], [(2, -1)]])
def test_out_of_range(pairs):
    with pytest.raises(VertexOutOfRange):
        build_graph(3, pairs)


def test_incidence_keeps_insertion_order():
    g = build_graph(3, [(2, 3), (1, 2), (3, 1)])
    assert g.incidence(2) == [(0, True), (2, False)]
    assert g.incidence(0) == [(1, False), (2, True)]


def test_half_edges():
    h = HalfEdge(4, False)
    assert h.dart == 8
    assert h.twin() == HalfEdge(4, True)
    assert h.twin().twin() == h
    assert HalfEdge.from_dart(9) == HalfEdge(4, True)
    g = g_ref()
    assert g.dart_vertex(HalfEdge(0, True).dart) == 1


def test_components_examples():
    assert connected_components(g_ref()) == [list(range(10))]
    assert connected_components(build_graph(4, [])) == [[0], [1], [2], [3]]
    two = build_graph(6, [(4, 5), (1, 2), (6, 4), (2, 3), (5, 6), (3, 1)])
    assert connected_components(two) == [[0, 1, 2], [3, 4, 5]]


edge_lists = st.integers(1, 12).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(
            st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda p: p[0] != p[1]),
            max_size=30,
        ),
    )
)


@settings(max_examples=150, deadline=None)
@given(edge_lists)
def test_round_trip_and_degree_sum(case):
    n, pairs = case
    g = build_graph(n, pairs)
    again = build_graph(g.n, g.edge_list())
    assert again == g
    assert all(again.incidence(v) == g.incidence(v) for v in range(n))
    assert sum(len(g.incidence(v)) for v in range(n)) == 2 * g.m
    comps = connected_components(g)
    assert sorted(v for c in comps for v in c) == list(range(n))
    assert all(c == sorted(c) for c in comps)
