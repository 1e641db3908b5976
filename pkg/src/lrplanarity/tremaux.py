"""Depth-first search tree, return points and block/thin/thick classes.

Vertices on a common root path are compared by depth, so every "low"
quantity is stored as a vertex plus its depth.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import IntEnum

import numpy as np
from numba import njit

from .graph import Graph

NONE = -1
_INF = np.iinfo(np.int64).max


class EdgeClass(IntEnum):
    BLOCK = 0
    THIN = 1
    THICK = 2
    BACK = 3


class NotConnected(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TremauxData:
    """A DFS (Tremaux) tree of a graph together with its derived labels.

    Edge arrays are indexed by edge id. ``src``/``dst`` give the tree
    orientation: tree edges point away from the root, back-edges towards
    it. ``low2`` holds ``NONE`` when there is no second return point.
    ``out_ptr``/``out_edge`` list the outgoing edges of every vertex in
    incidence order.
    """

    roots: np.ndarray
    parent_edge: np.ndarray
    depth: np.ndarray
    preorder: np.ndarray
    src: np.ndarray
    dst: np.ndarray
    is_tree: np.ndarray
    init_anchor: np.ndarray
    out_ptr: np.ndarray
    out_edge: np.ndarray
    low: np.ndarray | None = None
    low2: np.ndarray | None = None
    edge_class: np.ndarray | None = None

    @property
    def root(self) -> int:
        return int(self.roots[0])

    @property
    def low_depth(self) -> np.ndarray:
        return self.depth[self.low]

    def outgoing(self, v: int) -> list[int]:
        return self.out_edge[self.out_ptr[v] : self.out_ptr[v + 1]].tolist()

    def tree_edges(self) -> list[int]:
        return np.flatnonzero(self.is_tree).tolist()

    def back_edges(self) -> list[int]:
        return np.flatnonzero(~self.is_tree).tolist()

    def is_ancestor(self, x: int, y: int) -> bool:
        """True when ``x`` lies on the tree path from the root to ``y``."""
        while self.depth[y] > self.depth[x]:
            y = int(self.src[self.parent_edge[y]])
        return x == y


@njit(cache=True)
def _dfs(n, m, tails, heads, inc_ptr, inc_dart, roots):
    depth = np.full(n, -1, dtype=np.int64)
    parent_edge = np.full(n, -1, dtype=np.int64)
    active = np.full(n, -1, dtype=np.int64)
    pos = np.zeros(n, dtype=np.int64)
    src = np.full(m, -1, dtype=np.int64)
    dst = np.full(m, -1, dtype=np.int64)
    is_tree = np.zeros(m, dtype=np.bool_)
    init_anchor = np.full(m, -1, dtype=np.int64)
    preorder = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    nvisit = 0
    nroots = 0
    for r in roots:
        if depth[r] != -1:
            continue
        roots[nroots] = r
        nroots += 1
        depth[r] = 0
        preorder[nvisit] = r
        nvisit += 1
        pos[r] = inc_ptr[r]
        sp = 1
        stack[0] = r
        while sp > 0:
            v = stack[sp - 1]
            if pos[v] == inc_ptr[v + 1]:
                sp -= 1
                continue
            d = inc_dart[pos[v]]
            pos[v] += 1
            e = d >> 1
            if src[e] != -1:
                continue
            w = tails[e] if d & 1 else heads[e]
            src[e] = v
            dst[e] = w
            if depth[w] == -1:
                is_tree[e] = True
                parent_edge[w] = e
                depth[w] = depth[v] + 1
                active[v] = e
                preorder[nvisit] = w
                nvisit += 1
                pos[w] = inc_ptr[w]
                stack[sp] = w
                sp += 1
            else:
                # w is on the stack: its active edge leads towards v
                init_anchor[e] = active[w]
    return (roots[:nroots], nvisit, depth, parent_edge, src, dst, is_tree,
            init_anchor, preorder)


@njit(cache=True)
def _outgoing(n, src, inc_ptr, inc_dart):
    out_ptr = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        c = 0
        for i in range(inc_ptr[v], inc_ptr[v + 1]):
            if src[inc_dart[i] >> 1] == v:
                c += 1
        out_ptr[v + 1] = out_ptr[v] + c
    out_edge = np.empty(out_ptr[n], dtype=np.int64)
    k = 0
    for v in range(n):
        for i in range(inc_ptr[v], inc_ptr[v + 1]):
            e = inc_dart[i] >> 1
            if src[e] == v:
                out_edge[k] = e
                k += 1
    return out_ptr, out_edge


def run_dfs(g: Graph, root: int = 0, *, forest: bool = False, lows: bool = True) -> TremauxData:
    """DFS from ``root`` following each incidence list in insertion order.

    With ``forest=True`` every unreached component is searched too, rooted
    at its smallest vertex; otherwise an unreached vertex raises
    :class:`NotConnected`. Unless ``lows=False``, the returned data also
    carries low/low2 and the edge classes.
    """
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} outside 0..{g.n - 1}")
    if forest:
        order = np.concatenate(([root], np.arange(g.n, dtype=np.int64)))
    else:
        order = np.array([root], dtype=np.int64)
    roots, nvisit, depth, parent_edge, src, dst, is_tree, anchor, pre = _dfs(
        g.n, g.m, g.tails, g.heads, g.inc_ptr, g.inc_dart, order
    )
    if nvisit < g.n:
        raise NotConnected(f"{g.n - nvisit} vertices unreachable from {root}")
    out_ptr, out_edge = _outgoing(g.n, src, g.inc_ptr, g.inc_dart)
    t = TremauxData(
        roots=roots.copy(),
        parent_edge=parent_edge,
        depth=depth,
        preorder=pre,
        src=src,
        dst=dst,
        is_tree=is_tree,
        init_anchor=anchor,
        out_ptr=out_ptr,
        out_edge=out_edge,
    )
    if lows:
        t = classify_edges(compute_lows(t))
    return t


@njit(cache=True)
def _lows(depth, preorder, src, dst, is_tree, out_ptr, out_edge):
    m = len(src)
    # smallest and second smallest distinct return depth above each edge
    r1 = np.full(m, _INF, dtype=np.int64)
    r2 = np.full(m, _INF, dtype=np.int64)
    r1v = np.full(m, -1, dtype=np.int64)
    r2v = np.full(m, -1, dtype=np.int64)
    low = np.empty(m, dtype=np.int64)
    low2 = np.full(m, -1, dtype=np.int64)
    for i in range(len(preorder) - 1, -1, -1):
        v = preorder[i]
        for k in range(out_ptr[v], out_ptr[v + 1]):
            e = out_edge[k]
            if not is_tree[e]:
                r1[e] = depth[dst[e]]
                r1v[e] = dst[e]
                low[e] = dst[e]
                continue
            w = dst[e]
            a, av, b, bv = _INF, -1, _INF, -1
            for kk in range(out_ptr[w], out_ptr[w + 1]):
                g = out_edge[kk]
                for j in range(2):
                    val = r1[g] if j == 0 else r2[g]
                    vv = r1v[g] if j == 0 else r2v[g]
                    if val < a:
                        b, bv = a, av
                        a, av = val, vv
                    elif a < val < b:
                        b, bv = val, vv
            r1[e], r1v[e], r2[e], r2v[e] = a, av, b, bv
            if a < depth[v]:
                low[e] = av
                low2[e] = bv
            else:
                low[e] = v
                low2[e] = av if a > depth[v] else bv
    return low, low2


def compute_lows(t: TremauxData) -> TremauxData:
    """Fill ``low`` and ``low2`` for every edge.

    ``low`` of a tree edge ``(x, y)`` is the shallower of ``x`` and the
    deepest-reaching return point in the subtree of ``y``; ``low2`` is the
    shallowest return point strictly deeper than ``low``. Both are taken
    over back-edge heads only.
    """
    low, low2 = _lows(t.depth, t.preorder, t.src, t.dst, t.is_tree, t.out_ptr, t.out_edge)
    return dataclasses.replace(t, low=low, low2=low2)


def classify_edges(t: TremauxData) -> TremauxData:
    if t.low is None:
        t = compute_lows(t)
    tail_depth = t.depth[t.src]
    low_depth = t.depth[t.low]
    low2_depth = np.where(t.low2 == NONE, _INF, t.depth[t.low2])
    cls = np.full(len(t.src), EdgeClass.BACK, dtype=np.int64)
    tree = t.is_tree
    cls[tree & (low_depth == tail_depth)] = EdgeClass.BLOCK
    below = tree & (low_depth < tail_depth)
    cls[below & (low2_depth >= tail_depth)] = EdgeClass.THIN
    cls[below & (low2_depth < tail_depth)] = EdgeClass.THICK
    return dataclasses.replace(t, edge_class=cls)
