from __future__ import annotations

import pytest

from helpers import all_connected_graphs, edge_id, g_ref, random_graphs
from lrplanarity import build_graph, check_planarity, connected_components, run_dfs
from lrplanarity.oracle import (
    GenSpec,
    InvalidSpec,
    TooLarge,
    brute_planar,
    check_strong_fcoloring,
    generate,
    random_connected,
    rotation_count,
    subdivide,
    triangulation,
)


@pytest.mark.parametrize("method", ["prune", "exhaustive"])
def test_small_kuratowski(method):
    assert brute_planar(generate(GenSpec.complete(4)), method)
    assert not brute_planar(generate(GenSpec.complete(5)), method)
    assert not brute_planar(generate(GenSpec.complete_bipartite(3, 3)), method)


def test_methods_agree():
    graphs = list(all_connected_graphs(4)) + random_graphs(60, (5, 6), seed=21)
    graphs = [g for g in graphs if rotation_count(g) <= 20_000]
    for g in graphs:
        assert brute_planar(g, "prune") == brute_planar(g, "exhaustive")


def test_guard():
    g = generate(GenSpec.complete(8))
    with pytest.raises(TooLarge):
        brute_planar(g)
    assert rotation_count(generate(GenSpec.complete(4))) == 2 ** 4


def test_edge_bound_and_subdivision():
    for g in random_graphs(150, (5, 7), seed=4):
        verdict = brute_planar(g)
        if g.m > 3 * g.n - 6:
            assert not verdict
        s = subdivide(g, 1)
        if rotation_count(s) <= 10 ** 7:
            assert brute_planar(s) == verdict


def test_generators():
    g = generate(GenSpec.triangulation(100, seed=1))
    assert (g.n, g.m) == (100, 294)
    k5s = generate(GenSpec.subdivide(GenSpec.complete(5), 1))
    assert (k5s.n, k5s.m) == (15, 20)
    assert not check_planarity(k5s).planar
    k33 = generate(GenSpec.complete_bipartite(3, 3))
    assert sorted(k33.edge_list()) == [(a, b) for a in (1, 2, 3) for b in (4, 5, 6)]


def test_triangulations_are_simple_and_maximal():
    for n in (3, 4, 10, 57):
        g = triangulation(n, n)
        pairs = {frozenset(p) for p in g.edges}
        assert len(pairs) == g.m == 3 * n - 6
        assert len(connected_components(g)) == 1
        res = check_planarity(g)
        assert res.planar
    assert triangulation(50, 7) == triangulation(50, 7)
    assert triangulation(50, 7) != triangulation(50, 8)


def test_random_connected():
    g = random_connected(30, 60, 5)
    assert (g.n, g.m) == (30, 60)
    assert len({frozenset(p) for p in g.edges}) == 60
    assert len(connected_components(g)) == 1
    assert random_connected(30, 60, 5) == g
    assert random_connected(1, 0, 0).m == 0


@pytest.mark.parametrize("spec", [
    GenSpec.complete(0), GenSpec.complete_bipartite(0, 2), GenSpec.random_connected(4, 2, 0),
    GenSpec.random_connected(4, 7, 0), GenSpec.subdivide(GenSpec.complete(3), -1),
    GenSpec("wheel", n=5),
])
def test_invalid_specs(spec):
    with pytest.raises(InvalidSpec):
        generate(spec)


def test_strong_coloring_checker():
    g = g_ref()
    res = check_planarity(g, embed=False)
    lam = res.outcome.lam.copy()
    assert check_strong_fcoloring(g, res.tremaux, lam)
    e97, e107 = edge_id(g, 9, 7), edge_id(g, 10, 7)
    lam[e107] = lam[e97]
    assert not check_strong_fcoloring(g, res.tremaux, lam)
    path = build_graph(4, [(1, 2), (2, 3), (3, 4)])
    assert check_strong_fcoloring(path, run_dfs(path, 0), {})


def test_low_set_must_be_one_color():
    # two block children of the root, each with a back-edge to it
    g = build_graph(5, [(1, 2), (2, 3), (3, 1), (1, 4), (4, 5), (5, 1)])
    t = run_dfs(g, 0)
    back = t.back_edges()
    assert check_strong_fcoloring(g, t, {back[0]: 1, back[1]: 1})
    assert not check_strong_fcoloring(g, t, {back[0]: 1, back[1]: -1})
