from __future__ import annotations

import pytest

from helpers import edge_id, g_ref, is_ancestor, labeled, random_graphs, tree_parent
from lrplanarity import build_graph, check_planarity, run_dfs
from lrplanarity.lrtest import (
    MERGE,
    OPPOSITE,
    SAME,
    Arena,
    ConstraintSystem,
    NonPlanar,
    delete_low,
    extract_lambda,
    merge_cs,
)
from lrplanarity.oracle import GenSpec, check_strong_fcoloring, generate, triangulation


@pytest.fixture()
def ref():
    g = g_ref()
    t = run_dfs(g, 0)
    arena = Arena(g.m, t.depth[t.low])

    def e(u, v):
        return edge_id(g, u, v)

    def cs(*pairs):
        return ConstraintSystem.from_pairs(
            arena, [([e(*x) for x in s0], [e(*x) for x in s1]) for s0, s1 in pairs]
        )

    def shown(c):
        return [([labeled(t, x) for x in s0], [labeled(t, x) for x in s1])
                for s0, s1 in c.pairs()]

    depth = {v + 1: int(d) for v, d in enumerate(t.depth)}
    return arena, cs, shown, depth


def test_merge_at_8(ref):
    arena, cs, shown, depth = ref
    out = merge_cs(cs(([(9, 6)], []), ([(9, 7)], [])),
                   cs(([(10, 6)], []), ([(10, 7)], [])), depth[6], depth[6])
    assert shown(out) == [([(10, 6), (9, 6)], []), ([(9, 7)], [(10, 7)])]
    assert out.is_valid()
    after = delete_low(out, depth[7])
    assert shown(after) == [([(10, 6), (9, 6)], [])]


def test_merge_at_7(ref):
    arena, cs, shown, depth = ref
    out = merge_cs(cs(([(7, 3)], [])), cs(([(10, 6), (9, 6)], [])), depth[3], depth[6])
    assert shown(out) == [([(7, 3)], []), ([(10, 6), (9, 6)], [])]


def test_merge_at_6_appends_low_set(ref):
    # outgoing order at 6 is (6,7) then (6,3): CS((6,7)) receives CS((6,3))
    arena, cs, shown, depth = ref
    out = merge_cs(cs(([(7, 3)], [])), cs(([(6, 3)], [])), depth[3], depth[3])
    assert shown(out) == [([(6, 3), (7, 3)], [])]


def test_deletions(ref):
    arena, cs, shown, depth = ref
    assert shown(delete_low(cs(([(5, 1)], [])), depth[1])) == []
    same = cs(([(5, 1)], []), ([(5, 2)], []))
    assert shown(delete_low(same, depth[4])) == [([(5, 1)], []), ([(5, 2)], [])]


def test_conflict_raises(ref):
    arena, cs, shown, depth = ref
    with pytest.raises(NonPlanar):
        merge_cs(cs(([(9, 7)], [(10, 7)])), cs(([(9, 6)], [])), depth[6], depth[6])


def test_ref_constraints():
    g = g_ref()
    res = check_planarity(g, embed=False, record=True)
    assert res.planar
    t = res.tremaux

    def pair(a, b, rel):
        return frozenset((labeled(t, a), labeled(t, b))), rel

    got = {pair(a, b, rel) for a, b, rel in res.outcome.forest.constraints}
    assert got == {
        (frozenset({(9, 6), (10, 6)}), SAME),
        (frozenset({(6, 3), (7, 3)}), SAME),
        (frozenset({(9, 7), (10, 7)}), OPPOSITE),
    }
    lam = extract_lambda(res.outcome.forest, t.back_edges())

    def side(u, v):
        return lam[edge_id(g, u, v)]

    assert side(9, 7) == -side(10, 7)
    assert side(9, 6) == side(10, 6)
    assert side(6, 3) == side(7, 3)


def test_lambda_trivial_cases():
    tri = build_graph(3, [(1, 2), (2, 3), (3, 1)])
    res = check_planarity(tri, embed=False)
    assert extract_lambda(res.outcome.forest, [2]) == {2: 1}
    bowtie = build_graph(5, [(1, 2), (2, 3), (3, 1), (1, 4), (4, 5), (5, 1)])
    res = check_planarity(bowtie, embed=False)
    back = res.tremaux.back_edges()
    assert len(back) == 2
    assert set(extract_lambda(res.outcome.forest, back).values()) == {1}


@pytest.mark.parametrize("spec", [GenSpec.complete(5), GenSpec.complete_bipartite(3, 3)])
def test_kuratowski_rejected(spec):
    res = check_planarity(generate(spec), check=True)
    assert not res.planar and res.outcome.verdict == "nonplanar"
    assert res.rotation is None


_CORPUS = random_graphs(250, (4, 8), seed=3) + [triangulation(n, n) for n in range(3, 9)]


@pytest.mark.parametrize("g", _CORPUS)
def test_stacks_hold_fringes(g):
    """Every constraint system after deletion holds exactly the fringe of
    its tree edge; step-by-step invariant checks run along the way."""
    res = check_planarity(g, embed=False, trace=True, check=True)
    t = res.tremaux
    parent = tree_parent(t)
    depth = t.depth.tolist()
    back = [(f, int(t.src[f]), int(t.dst[f])) for f in t.back_edges()]
    steps = res.outcome.trace
    if not res.planar:
        return
    latest = {}
    for s in steps:
        latest[s.vertex] = s
    for v in range(g.n):
        pe = int(t.parent_edge[v])
        if pe == -1:
            continue
        x = int(t.src[pe])
        fringe = {f for f, u, w in back if is_ancestor(parent, v, u) and depth[w] < depth[x]}
        step = latest.get(v)
        held = set() if step is None else {f for s0, s1 in step.pairs for f in s0 + s1}
        if step is not None and step.stage == MERGE:
            held -= {f for f in held if t.dst[f] == x}
        assert held == fringe


@pytest.mark.parametrize("g", [g for g in _CORPUS if g.m <= 20])
def test_lambda_is_strong(g):
    res = check_planarity(g, embed=False)
    if res.planar:
        assert check_strong_fcoloring(g, res.tremaux, res.outcome.lam)
