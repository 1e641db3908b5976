from __future__ import annotations

import itertools
from pathlib import Path

import numpy as np

from lrplanarity import Graph, build_graph, connected_components
from lrplanarity.oracle import GUARD, random_connected, rotation_count

DATA = Path(__file__).parent / "data"

# tree edges, then back-edges; a DFS from vertex 1 yields exactly this tree
G_REF_EDGES = [
    (1, 2), (2, 3), (3, 4), (4, 5), (4, 6), (6, 7), (7, 8), (8, 9), (8, 10),
    (5, 1), (5, 2), (6, 3), (7, 3), (9, 6), (9, 7), (10, 6), (10, 7),
]


def g_ref() -> Graph:
    return build_graph(10, G_REF_EDGES)


def edge_id(g: Graph, u: int, v: int) -> int:
    """0-based id of the edge joining 1-based vertices u and v."""
    for e, (a, b) in enumerate(g.edge_list()):
        if {a, b} == {u, v}:
            return e
    raise KeyError((u, v))


def labeled(t, e: int) -> tuple[int, int]:
    return int(t.src[e]) + 1, int(t.dst[e]) + 1


def all_connected_graphs(n: int):
    """Every connected simple graph on vertices 1..n (labeled)."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        chosen = [p for i, p in enumerate(pairs) if mask >> i & 1]
        if len(chosen) < n - 1:
            continue
        g = build_graph(n, chosen)
        if len(connected_components(g)) == 1:
            yield g


def random_graphs(count: int, n_range=(5, 7), seed: int = 0, guard: bool = True):
    """Seeded random connected simple graphs within the oracle guard."""
    rng = np.random.default_rng(seed)
    out = []
    s = 0
    while len(out) < count:
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        m = int(rng.integers(n - 1, n * (n - 1) // 2 + 1))
        g = random_connected(n, m, seed * 1_000_003 + s)
        s += 1
        if guard and rotation_count(g) > GUARD:
            continue
        out.append(g)
    return out


def tree_parent(t) -> list[int]:
    return [int(t.src[pe]) if pe != -1 else -1 for pe in t.parent_edge.tolist()]


def is_ancestor(parent: list[int], a: int, b: int) -> bool:
    """``a`` lies on the tree path from the root to ``b`` (inclusive)."""
    while b != -1:
        if a == b:
            return True
        b = parent[b]
    return False
