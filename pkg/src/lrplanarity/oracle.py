"""Reference answers that do not use the Left-Right machinery.

* :func:`brute_planar` searches rotation systems for one of genus 0.
* :func:`check_strong_fcoloring` evaluates the side-assignment conditions
  straight from their set definitions by scanning subtrees.
* :func:`generate` builds seeded test and benchmark graphs. Randomness
  comes from ``numpy.random.default_rng`` (PCG64) seeded with the given seed.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .graph import Graph, build_graph, connected_components
from .tremaux import TremauxData

GUARD = 10**7


class TooLarge(ValueError):
    pass


class InvalidSpec(ValueError):
    pass


def rotation_count(g: Graph) -> int:
    """Number of rotation systems once each vertex's first half-edge is fixed."""
    return math.prod(math.factorial(max(d - 1, 0)) for d in g.degrees().tolist())


def brute_planar(g: Graph, method: str = "prune") -> bool:
    """True iff some rotation system is genus 0 on every component.

    ``method="exhaustive"`` tries every rotation system (first half-edge
    fixed per vertex). ``method="prune"`` inserts edges one at a time,
    keeping only partial rotations that stay genus 0; it finds the same
    answer because every planar embedding restricts to planar embeddings
    of its connected prefixes.
    """
    count = rotation_count(g)
    if count > GUARD:
        raise TooLarge(f"{count} rotation systems exceed the guard of {GUARD}")
    if method not in ("prune", "exhaustive"):
        raise ValueError(f"unknown method {method!r}")
    edges = g.edges
    for comp in connected_components(g):
        cset = set(comp)
        ce = [e for e, (u, _) in enumerate(edges) if u in cset]
        if not ce:
            continue
        ok = _prune(edges, ce, comp[0]) if method == "prune" else _exhaustive(g, comp, ce)
        if not ok:
            return False
    return True


def _end(edges, d):
    u, v = edges[d >> 1]
    return v if d & 1 else u


def _face_ids(edges, rot, darts):
    """Label each dart with its face under ``d -> next(twin(d))``."""
    succ = {}
    for lst in rot.values():
        for i, d in enumerate(lst):
            succ[d] = lst[(i + 1) % len(lst)]
    face = {}
    nf = 0
    for d0 in darts:
        if d0 in face:
            continue
        d = d0
        while d not in face:
            face[d] = nf
            d = succ[d ^ 1]
        nf += 1
    return face, nf


def _prune(edges, ce, start) -> bool:
    order = []
    seen = {start}
    rest = list(ce)
    while rest:
        for i, e in enumerate(rest):
            u, v = edges[e]
            if u in seen or v in seen:
                order.append(e)
                seen.update((u, v))
                del rest[i]
                break
    rot: dict[int, list[int]] = {start: []}
    placed: list[int] = []

    def insert(i: int) -> bool:
        if i == len(order):
            return True
        e = order[i]
        u, v = edges[e]
        du, dv = 2 * e, 2 * e + 1
        if u not in rot or v not in rot:
            x, dx, y, dy = (u, du, v, dv) if u in rot else (v, dv, u, du)
            rot[y] = [dy]
            lst = rot[x]
            for pos in range(max(1, len(lst))):
                lst.insert(pos + 1 if lst else 0, dx)
                placed.extend((du, dv))
                found = insert(i + 1)
                del placed[-2:]
                lst.remove(dx)
                if found:
                    break
            del rot[y]
            return found
        face, _ = _face_ids(edges, rot, placed)
        ru, rv = rot[u], rot[v]
        for i_u, cu in enumerate(ru):
            for i_v, cv in enumerate(rv):
                # the corner after dart c lies on the face of twin(c)
                if face[cu ^ 1] != face[cv ^ 1]:
                    continue
                ru.insert(i_u + 1, du)
                rv.insert(rv.index(cv) + 1, dv)
                placed.extend((du, dv))
                found = insert(i + 1)
                del placed[-2:]
                ru.remove(du)
                rv.remove(dv)
                if found:
                    return True
        return False

    return insert(0)


def _exhaustive(g: Graph, comp, ce) -> bool:
    darts = [d for e in ce for d in (2 * e, 2 * e + 1)]
    choices = []
    for v in comp:
        ds = [d for d in darts if _end(g.edges, d) == v]
        if not ds:
            continue
        head, tail = ds[0], ds[1:]
        choices.append((v, [(head,) + p for p in itertools.permutations(tail)]))
    target = 2 - len(comp) + len(ce)
    verts = [v for v, _ in choices]
    for combo in itertools.product(*(opts for _, opts in choices)):
        rot = {v: list(c) for v, c in zip(verts, combo)}
        if _face_ids(g.edges, rot, darts)[1] == target:
            return True
    return False


def check_strong_fcoloring(g: Graph, t: TremauxData, lam) -> bool:
    """Evaluate the strong side-assignment conditions from their definitions.

    Only the tree of ``t`` is used (parents and orientation); low points,
    fringes, interlace sets and low sets are recomputed by subtree scans.
    ``lam`` maps each back-edge id to +1 or -1 (dict or array).
    """
    n = g.n
    parent = [-1] * n
    for v in range(n):
        pe = int(t.parent_edge[v])
        if pe != -1:
            parent[v] = int(t.src[pe])
    depth = [0] * n
    for v in range(n):
        w = v
        while parent[w] != -1:
            w = parent[w]
            depth[v] += 1

    def anc(a, b):  # a is on the root path of b
        while depth[b] > depth[a]:
            b = parent[b]
        return a == b

    back = [(e, int(t.src[e]), int(t.dst[e])) for e in range(g.m) if not t.is_tree[e]]
    color = {e: int(lam[e]) for e, _, _ in back}

    def above(y):  # back-edges whose lower end lies in the subtree of y
        return [(f, u, w) for f, u, w in back if anc(y, u)]

    def low_edge(e):
        x, y = int(t.src[e]), int(t.dst[e])
        if not t.is_tree[e]:
            return y
        return min([x] + [w for _, _, w in above(y)], key=lambda z: depth[z])

    def fringe(e):
        x, y = int(t.src[e]), int(t.dst[e])
        cand = above(y) if t.is_tree[e] else [(e, x, y)]
        return [(f, w) for f, _, w in cand if depth[w] < depth[x]]

    def mono(fs):
        return len({color[f] for f in fs}) <= 1

    for v in range(n):
        out = [e for e in range(g.m) if t.src[e] == v]
        for e1, e2 in itertools.permutations(out, 2):
            low2 = depth[low_edge(e2)]
            s12 = [f for f, w in fringe(e1) if depth[w] > low2]
            low1 = depth[low_edge(e1)]
            s21 = [f for f, w in fringe(e2) if depth[w] > low1]
            if not (mono(s12) and mono(s21)):
                return False
            if s12 and s21 and color[s12[0]] == color[s21[0]]:
                return False
        sub = above(v)
        lv = min([v] + [w for _, _, w in sub], key=lambda z: depth[z])
        if not mono([f for f, _, w in sub if w == lv]):
            return False
    return True


@dataclass(frozen=True)
class GenSpec:
    """A graph family member. ``kind`` is one of ``complete``,
    ``complete_bipartite``, ``subdivide``, ``triangulation`` and
    ``random_connected``; unused fields stay ``None``.
    """

    kind: str
    n: int | None = None
    a: int | None = None
    b: int | None = None
    m: int | None = None
    k: int | None = None
    seed: int = 0
    base: "GenSpec | Graph | None" = None

    @classmethod
    def complete(cls, n: int) -> "GenSpec":
        return cls("complete", n=n)

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "GenSpec":
        return cls("complete_bipartite", a=a, b=b)

    @classmethod
    def subdivide(cls, base, k: int) -> "GenSpec":
        return cls("subdivide", base=base, k=k)

    @classmethod
    def triangulation(cls, n: int, seed: int = 0) -> "GenSpec":
        return cls("triangulation", n=n, seed=seed)

    @classmethod
    def random_connected(cls, n: int, m: int, seed: int = 0) -> "GenSpec":
        return cls("random_connected", n=n, m=m, seed=seed)


def generate(spec: GenSpec) -> Graph:
    kind = spec.kind
    if kind == "complete":
        _need(spec.n is not None and spec.n >= 1, "complete needs n >= 1")
        pairs = itertools.combinations(range(spec.n), 2)
        return _graph(spec.n, list(pairs))
    if kind == "complete_bipartite":
        a, b = spec.a, spec.b
        _need(a is not None and b is not None and a >= 1 and b >= 1,
              "complete_bipartite needs a, b >= 1")
        return _graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])
    if kind == "subdivide":
        _need(spec.k is not None and spec.k >= 0 and spec.base is not None,
              "subdivide needs a base graph and k >= 0")
        base = spec.base if isinstance(spec.base, Graph) else generate(spec.base)
        return subdivide(base, spec.k)
    if kind == "triangulation":
        _need(spec.n is not None and spec.n >= 1, "triangulation needs n >= 1")
        return triangulation(spec.n, spec.seed)
    if kind == "random_connected":
        n, m = spec.n, spec.m
        _need(n is not None and m is not None and n >= 1 and n - 1 <= m <= n * (n - 1) // 2,
              "random_connected needs n >= 1 and n - 1 <= m <= n(n-1)/2")
        return random_connected(n, m, spec.seed)
    raise InvalidSpec(f"unknown kind {kind!r}")


def _need(ok: bool, msg: str) -> None:
    if not ok:
        raise InvalidSpec(msg)


def _graph(n: int, pairs) -> Graph:
    return build_graph(n, [(u + 1, v + 1) for u, v in pairs])


def subdivide(g: Graph, k: int) -> Graph:
    """Replace edge ``e = (u, v)`` by the path ``u, n+e*k, ..., n+e*k+k-1, v``."""
    if k == 0:
        return g
    pairs = []
    for e, (u, v) in enumerate(g.edges):
        path = [u] + [g.n + e * k + i for i in range(k)] + [v]
        pairs.extend(zip(path, path[1:]))
    return _graph(g.n + g.m * k, pairs)


@njit(cache=True)
def _grow(n, u):
    m = 3 * n - 6
    tails = np.empty(m, dtype=np.int64)
    heads = np.empty(m, dtype=np.int64)
    faces = np.empty((2 * n - 4, 3), dtype=np.int64)
    tails[:3] = [0, 1, 2]
    heads[:3] = [1, 2, 0]
    faces[0] = [0, 1, 2]
    faces[1] = [0, 2, 1]
    nf = 2
    k = 3
    for v in range(3, n):
        i = int(u[v - 3] * nf)
        a, b, c = faces[i, 0], faces[i, 1], faces[i, 2]
        faces[i, 2] = v
        faces[nf, 0], faces[nf, 1], faces[nf, 2] = b, c, v
        faces[nf + 1, 0], faces[nf + 1, 1], faces[nf + 1, 2] = c, a, v
        nf += 2
        tails[k], tails[k + 1], tails[k + 2] = a, b, c
        heads[k], heads[k + 1], heads[k + 2] = v, v, v
        k += 3
    return tails, heads


def triangulation(n: int, seed: int = 0) -> Graph:
    """Random maximal planar graph: start from a triangle, then put each new
    vertex in a uniformly chosen face and join it to the face's corners."""
    if n < 3:
        return _graph(n, [(0, 1)] if n == 2 else [])
    u = np.random.default_rng(seed).random(n - 3)
    tails, heads = _grow(n, u)
    return Graph(n, tails, heads)


def random_connected(n: int, m: int, seed: int = 0) -> Graph:
    """Uniform random labeled spanning tree plus ``m - n + 1`` distinct extra
    edges; edge order and orientation are shuffled."""
    rng = np.random.default_rng(seed)
    pairs = _pruefer_tree(n, rng)
    have = {(min(p), max(p)) for p in pairs}
    extra = m - len(pairs)
    if extra:
        free = [p for p in itertools.combinations(range(n), 2) if p not in have]
        pick = rng.choice(len(free), size=extra, replace=False)
        pairs.extend(free[i] for i in pick.tolist())
    perm = rng.permutation(len(pairs)).tolist()
    flip = rng.integers(0, 2, size=len(pairs)).tolist()
    out = []
    for i, f in zip(perm, flip):
        u, v = pairs[i]
        out.append((v, u) if f else (u, v))
    return _graph(n, out)


def _pruefer_tree(n: int, rng) -> list[tuple[int, int]]:
    if n <= 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = rng.integers(0, n, size=n - 2).tolist()
    deg = [1] * n
    for x in seq:
        deg[x] += 1
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    pairs = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        pairs.append((leaf, x))
        deg[x] -= 1
        if deg[x] == 1:
            heapq.heappush(leaves, x)
    pairs.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return pairs
