"""Rotation systems from a side assignment, face tracing and Euler checks.

Rotations are counterclockwise. Faces follow ``d -> succ(twin(d))`` where
``succ`` is the next dart around the same vertex.

At a vertex ``v`` the edges are met, clockwise from the entering tree
edge, as ``L_1 e_1 R_1 L_2 e_2 R_2 ...``: the outgoing edges with side -1
in decreasing sort order, then those with side +1 in increasing order.
``L_i``/``R_i`` are the back-edges returning to ``v`` through ``e_i`` with
side -1/+1. Two of them are ordered by where their tree paths split: the
one whose branch comes later clockwise at the split vertex goes first.
That equals reverse order of discovery by a DFS which visits outgoing
edges clockwise. The stored rotation is the reverse (counterclockwise)
of the whole sequence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .graph import Graph, component_labels
from .lrtest import InternalInconsistency, LrOutcome, _local_order, _remap
from .tremaux import TremauxData
from .ttorder import SortedAdjacency


class InvalidRotation(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class RotationSystem:
    """Cyclic dart order per vertex, CSR layout (``ptr`` has n + 1 entries)."""

    ptr: np.ndarray
    darts: np.ndarray

    def at(self, v: int) -> list[int]:
        return self.darts[self.ptr[v] : self.ptr[v + 1]].tolist()

    def successor(self) -> np.ndarray:
        return _successor(self.ptr, self.darts)

    def validate(self, g: Graph) -> None:
        if len(self.ptr) != g.n + 1 or len(self.darts) != 2 * g.m:
            raise InvalidRotation("rotation does not match the graph size")
        seen = np.zeros(2 * g.m, dtype=np.int64)
        np.add.at(seen, self.darts, 1)
        if not np.all(seen == 1):
            raise InvalidRotation("every half-edge must appear exactly once")
        owner = np.repeat(np.arange(g.n), np.diff(self.ptr))
        ends = np.where(self.darts & 1, g.heads[self.darts >> 1], g.tails[self.darts >> 1])
        if not np.array_equal(owner, ends):
            raise InvalidRotation("a half-edge is listed at the wrong vertex")

    @classmethod
    def from_lists(cls, g: Graph, rotation: list[list[int]]) -> "RotationSystem":
        ptr = np.zeros(g.n + 1, dtype=np.int64)
        ptr[1:] = np.cumsum([len(r) for r in rotation])
        darts = np.array([d for r in rotation for d in r], dtype=np.int64)
        rot = cls(ptr, darts)
        rot.validate(g)
        return rot


@dataclass(frozen=True, eq=False)
class FaceTrace:
    count: int
    face_of: np.ndarray
    ptr: np.ndarray
    darts: np.ndarray

    @property
    def faces(self) -> list[list[int]]:
        return [self.darts[self.ptr[i] : self.ptr[i + 1]].tolist() for i in range(self.count)]

    @property
    def lengths(self) -> np.ndarray:
        return np.diff(self.ptr)


@dataclass(frozen=True)
class ComponentEuler:
    vertices: int
    edges: int
    faces: int

    @property
    def characteristic(self) -> int:
        return self.vertices - self.edges + self.faces

    @property
    def planar(self) -> bool:
        return self.characteristic == 2


@dataclass(frozen=True)
class CertResult:
    genus0: bool
    components: tuple[ComponentEuler, ...]

    @property
    def faces(self) -> int:
        return sum(c.faces for c in self.components)


@njit(cache=True)
def _successor(ptr, darts):
    succ = np.empty(len(darts), dtype=np.int64)
    for v in range(len(ptr) - 1):
        a = ptr[v]
        b = ptr[v + 1]
        for i in range(a, b):
            succ[darts[i]] = darts[i + 1] if i + 1 < b else darts[a]
    return succ


@njit(cache=True)
def _rotation(n, tails, dst, is_tree, parent_edge, roots, sptr, sedge, hat, lam, anchor, ptr):
    m = len(dst)
    # outgoing edges in clockwise order: side -1 by decreasing sort rank,
    # then side +1 by increasing rank
    cw = np.empty(len(sedge), dtype=np.int64)
    for v in range(n):
        w = sptr[v]
        k0 = sptr[v]
        k1 = sptr[v + 1]
        for k in range(k1 - 1, k0 - 1, -1):
            if hat[sedge[k]] == -1:
                cw[w] = sedge[k]
                w += 1
        for k in range(k0, k1):
            if hat[sedge[k]] == 1:
                cw[w] = sedge[k]
                w += 1

    # rank back-edges by a DFS that follows the clockwise order
    rank = np.full(m, -1, dtype=np.int64)
    pos = sptr[:-1].copy()
    stack = np.empty(n, dtype=np.int64)
    nb = 0
    for r in roots:
        stack[0] = r
        sp = 1
        while sp > 0:
            v = stack[sp - 1]
            if pos[v] == sptr[v + 1]:
                sp -= 1
                continue
            e = cw[pos[v]]
            pos[v] += 1
            if is_tree[e]:
                stack[sp] = dst[e]
                sp += 1
            else:
                rank[e] = nb
                nb += 1
    by_rank = np.empty(nb, dtype=np.int64)
    for e in range(m):
        if not is_tree[e]:
            by_rank[rank[e]] = e
    gptr = np.zeros(m + 1, dtype=np.int64)
    for e in by_rank:
        gptr[anchor[e] + 1] += 1
    for i in range(m):
        gptr[i + 1] += gptr[i]
    fill = gptr[:-1].copy()
    group = np.empty(nb, dtype=np.int64)
    for e in by_rank:
        group[fill[anchor[e]]] = e
        fill[anchor[e]] += 1

    darts = np.empty(2 * m, dtype=np.int64)
    for v in range(n):
        w = ptr[v]
        pe = parent_edge[v]
        if pe != -1:
            darts[w] = 2 * pe + (0 if tails[pe] == v else 1)
            w += 1
        for k in range(sptr[v], sptr[v + 1]):
            e = cw[k]
            # returning back-edges around e: later rank first on both sides
            if is_tree[e]:
                for i in range(gptr[e + 1] - 1, gptr[e] - 1, -1):
                    f = group[i]
                    if lam[f] == -1:
                        darts[w] = 2 * f + (0 if tails[f] == v else 1)
                        w += 1
            darts[w] = 2 * e + (0 if tails[e] == v else 1)
            w += 1
            if is_tree[e]:
                for i in range(gptr[e + 1] - 1, gptr[e] - 1, -1):
                    f = group[i]
                    if lam[f] == 1:
                        darts[w] = 2 * f + (0 if tails[f] == v else 1)
                        w += 1
        if w != ptr[v + 1]:
            return darts, v
        # clockwise -> counterclockwise, keeping the first dart in place
        darts[ptr[v] + 1 : ptr[v + 1]] = darts[ptr[v] + 1 : ptr[v + 1]][::-1].copy()
    return darts, -1


def build_rotation(g: Graph, t: TremauxData, adj: SortedAdjacency,
                   outcome: LrOutcome) -> RotationSystem:
    if not outcome.planar:
        raise ValueError("no embedding for a nonplanar verdict")
    hat = outcome.lambda_hat()
    pre = t.preorder
    rank, lptr, edge_of, slot_of = _local_order(t, adj)
    pe = t.parent_edge[pre]
    anchor = t.init_anchor[edge_of]
    deg = np.diff(g.inc_ptr)[pre]
    ptr = np.zeros(g.n + 1, dtype=np.int64)
    np.cumsum(deg, out=ptr[1:])
    local, bad = _rotation(
        g.n, rank[t.src[edge_of]], rank[t.dst[edge_of]], t.is_tree[edge_of],
        _remap(pe, slot_of), rank[t.roots], lptr,
        np.arange(g.m, dtype=np.int64), hat[edge_of], outcome.lam[edge_of],
        _remap(anchor, slot_of), ptr,
    )
    if bad != -1:
        raise InternalInconsistency(f"rotation at vertex {pre[bad]} misses half-edges")
    # back to the graph's edge ids, orientation and vertex blocks
    e = edge_of[local >> 1]
    flip = (g.tails != t.src).astype(np.int64)
    darts = np.empty(2 * g.m, dtype=np.int64)
    darts[np.repeat(g.inc_ptr[pre] - ptr[:-1], deg) + np.arange(2 * g.m)] = (
        2 * e + ((local & 1) ^ flip[e])
    )
    return RotationSystem(g.inc_ptr.copy(), darts)


@njit(cache=True)
def _faces(succ):
    nd = len(succ)
    face_of = np.full(nd, -1, dtype=np.int64)
    order = np.empty(nd, dtype=np.int64)
    starts = np.empty(nd + 1, dtype=np.int64)
    count = 0
    w = 0
    for d0 in range(nd):
        if face_of[d0] != -1:
            continue
        starts[count] = w
        d = d0
        while face_of[d] == -1:
            face_of[d] = count
            order[w] = d
            w += 1
            d = succ[d ^ 1]
        count += 1
    starts[count] = w
    return count, face_of, starts[: count + 1].copy(), order


def trace_faces(g: Graph, rot: RotationSystem) -> FaceTrace:
    count, face_of, ptr, darts = _faces(rot.successor())
    return FaceTrace(int(count), face_of, ptr, darts)


def certify(g: Graph, rot: RotationSystem) -> CertResult:
    """Euler check ``n - m + f == 2`` on every component.

    An edgeless component counts as one face.
    """
    rot.validate(g)
    faces = trace_faces(g, rot)
    label, ncomp = component_labels(g)
    nv = np.bincount(label, minlength=ncomp)
    edge_comp = label[g.tails]
    ne = np.bincount(edge_comp, minlength=ncomp)
    nf = np.zeros(ncomp, dtype=np.int64)
    if faces.count:
        first = faces.darts[faces.ptr[:-1]]
        nf = np.bincount(label[np.where(first & 1, g.heads[first >> 1], g.tails[first >> 1])],
                         minlength=ncomp)
    nf = np.where(ne == 0, 1, nf)
    comps = tuple(ComponentEuler(int(a), int(b), int(c)) for a, b, c in zip(nv, ne, nf))
    return CertResult(all(c.planar for c in comps), comps)


def format_rotation(g: Graph, rot: RotationSystem, edge_ids=None) -> list[str]:
    """``v: n1/e1 n2/e2 ...`` lines with 1-based vertices and edge ids.

    ``edge_ids`` maps internal edge ids to the printed ones (default ``e + 1``).
    """
    lines = []
    for v in range(g.n):
        items = []
        for d in rot.at(v):
            e = d >> 1
            w = g.tails[e] if d & 1 else g.heads[e]
            label = e + 1 if edge_ids is None else edge_ids[e]
            items.append(f"{w + 1}/{label}")
        lines.append(f"{v + 1}: " + " ".join(items))
    return lines


def parse_rotation(g: Graph, lines) -> RotationSystem:
    """Inverse of :func:`format_rotation` for 1-based edge ids.

    Lines not of the form ``v: ...`` are ignored. For a loop, the first
    listed end is taken as its tail dart.
    """
    rotation: list[list[int] | None] = [None] * g.n
    used = set()
    for raw in lines:
        line = raw.strip()
        head, sep, rest = line.partition(":")
        if not sep or not head.strip().isdigit():
            continue
        v = int(head) - 1
        if not 0 <= v < g.n or rotation[v] is not None:
            raise InvalidRotation(f"bad or repeated vertex line {line!r}")
        darts = []
        for tok in rest.split():
            try:
                w_s, e_s = tok.split("/")
                w, e = int(w_s) - 1, int(e_s) - 1
            except ValueError:
                raise InvalidRotation(f"bad token {tok!r}") from None
            if not 0 <= e < g.m:
                raise InvalidRotation(f"unknown edge {e + 1}")
            tail, head_v = int(g.tails[e]), int(g.heads[e])
            if tail == head_v:
                d = 2 * e if 2 * e not in used else 2 * e + 1
                ok = v == tail and w == tail
            elif v == tail:
                d, ok = 2 * e, w == head_v
            else:
                d, ok = 2 * e + 1, v == head_v and w == tail
            if not ok or d in used:
                raise InvalidRotation(f"edge {e + 1} does not join {v + 1} and {w + 1}")
            used.add(d)
            darts.append(d)
        rotation[v] = darts
    return RotationSystem.from_lists(g, [r or [] for r in rotation])
