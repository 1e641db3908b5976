from __future__ import annotations

import pytest

from helpers import edge_id, g_ref, is_ancestor, labeled, random_graphs, tree_parent
from lrplanarity import EdgeClass, NotConnected, build_graph, run_dfs
from lrplanarity.oracle import random_connected, triangulation

REF_TREE = {(1, 2), (2, 3), (3, 4), (4, 5), (4, 6), (6, 7), (7, 8), (8, 9), (8, 10)}
REF_BACK = {(5, 1), (5, 2), (6, 3), (7, 3), (9, 6), (9, 7), (10, 6), (10, 7)}


@pytest.fixture(scope="module")
def ref():
    g = g_ref()
    return g, run_dfs(g, 0)


def test_ref_tree(ref):
    g, t = ref
    assert {labeled(t, e) for e in t.tree_edges()} == REF_TREE
    assert {labeled(t, e) for e in t.back_edges()} == REF_BACK
    assert t.depth.tolist() == [0, 1, 2, 3, 4, 4, 5, 6, 7, 7]


def test_triangle_and_path():
    t = run_dfs(build_graph(3, [(1, 2), (2, 3), (3, 1)]), 0)
    assert {labeled(t, e) for e in t.tree_edges()} == {(1, 2), (2, 3)}
    assert [labeled(t, e) for e in t.back_edges()] == [(3, 1)]
    t = run_dfs(build_graph(4, [(1, 2), (3, 2), (4, 3)]), 0)
    assert t.back_edges() == []
    assert all(c == EdgeClass.BLOCK for c in t.edge_class.tolist())


def test_not_connected():
    g = build_graph(4, [(1, 2), (3, 4)])
    with pytest.raises(NotConnected):
        run_dfs(g, 0)
    t = run_dfs(g, 0, forest=True)
    assert t.roots.tolist() == [0, 2]


def test_ref_lows(ref):
    g, t = ref

    def low(u, v):
        return int(t.low[edge_id(g, u, v)]) + 1

    def low2(u, v):
        return int(t.low2[edge_id(g, u, v)]) + 1

    assert (low(4, 5), low(4, 6), low(7, 8), low(8, 9)) == (1, 3, 6, 6)
    assert (low2(8, 9), low2(7, 8)) == (7, 7)
    assert low(9, 7) == 7  # back-edge: its head


def test_leaf_edge_without_back_edges():
    g = build_graph(4, [(1, 2), (2, 3), (3, 1), (3, 4)])
    t = run_dfs(g, 0)
    e = edge_id(g, 3, 4)
    assert t.low[e] == t.src[e]
    assert t.low2[e] == -1


def test_ref_classes(ref):
    g, t = ref

    def cls(u, v):
        return EdgeClass(int(t.edge_class[edge_id(g, u, v)]))

    assert cls(1, 2) == EdgeClass.BLOCK
    assert cls(8, 9) == EdgeClass.THICK
    assert cls(7, 8) == EdgeClass.THIN
    assert cls(9, 6) == EdgeClass.BACK


def _corpus():
    graphs = random_graphs(150, (3, 9), seed=11, guard=False)
    graphs += [random_connected(14, m, s) for s, m in enumerate(range(13, 50, 3))]
    graphs += [triangulation(n, n) for n in (3, 6, 12, 18)]
    return [g for g in graphs if g.m <= 50]


@pytest.mark.parametrize("g", _corpus())
def test_brute_force_properties(g):
    t = run_dfs(g, 0)
    parent = tree_parent(t)
    depth = t.depth.tolist()
    back = [(f, int(t.src[f]), int(t.dst[f])) for f in t.back_edges()]
    for f, x, y in back:
        assert depth[y] < depth[x] and is_ancestor(parent, y, x)
        # anchor: the tree edge out of y on the path towards x
        a = int(t.init_anchor[f])
        assert t.src[a] == y and is_ancestor(parent, int(t.dst[a]), x)
        assert t.low[f] == y and t.low2[f] == -1
    for e in t.tree_edges():
        x, y = int(t.src[e]), int(t.dst[e])
        heads = [w for _, u, w in back if is_ancestor(parent, y, u)]
        low = min([x] + heads, key=lambda z: depth[z])
        assert t.low[e] == low
        deeper = [w for w in heads if depth[w] > depth[low]]
        low2 = min(deeper, key=lambda z: depth[z]) if deeper else -1
        assert t.low2[e] == low2
        thick = any(depth[low] < depth[w] < depth[x] for w in heads)
        expect = (EdgeClass.BLOCK if low == x else
                  EdgeClass.THICK if thick else EdgeClass.THIN)
        assert t.edge_class[e] == expect
