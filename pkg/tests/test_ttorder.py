from __future__ import annotations

import pytest

from helpers import edge_id, g_ref, labeled, random_graphs
from lrplanarity import EdgeClass, run_dfs, tt_sort
from lrplanarity.oracle import triangulation


@pytest.fixture(scope="module")
def ref():
    g = g_ref()
    t = run_dfs(g, 0)
    return g, t, tt_sort(g, t)


def test_ref_orders(ref):
    g, t, adj = ref
    assert [labeled(t, e) for e in adj.outgoing(3)] == [(4, 5), (4, 6)]
    assert [labeled(t, e) for e in adj.outgoing(6)] == [(7, 3), (7, 8)]
    assert [labeled(t, e) for e in adj.outgoing(7)] == [(8, 9), (8, 10)]
    e9, e10 = edge_id(g, 8, 9), edge_id(g, 8, 10)
    assert adj.key[e9] == adj.key[e10] == 2 * 4 + 1  # low 6 at depth 4, thick


def test_keys(ref):
    g, t, adj = ref
    thick = t.edge_class == EdgeClass.THICK
    assert (adj.key == 2 * t.depth[t.low] + thick).all()


@pytest.mark.parametrize("g", random_graphs(60, (4, 12), seed=5, guard=False)
                         + [triangulation(40, 2)])
def test_sorted_lists_extend_the_order(g):
    t = run_dfs(g, 0)
    adj = tt_sort(g, t)
    depth, low, cls = t.depth, t.low, t.edge_class
    for v in range(g.n):
        out = adj.outgoing(v)
        assert sorted(out) == sorted(t.outgoing(v))
        keys = [int(adj.key[e]) for e in out]
        assert keys == sorted(keys)
        for i, e in enumerate(out):
            for f in out[i + 1:]:
                assert not depth[low[f]] < depth[low[e]]
                assert not (low[e] == low[f] and cls[e] == EdgeClass.THICK
                            and cls[f] != EdgeClass.THICK)
        # equal keys keep incidence order
        inc = {e: i for i, e in enumerate(t.outgoing(v))}
        for e, f in zip(out, out[1:]):
            if adj.key[e] == adj.key[f]:
                assert inc[e] < inc[f]
    assert adj.key.max(initial=0) <= 2 * g.n + 1
