"""Loopless multigraph with stable edge ids and insertion-ordered incidence.

Vertices are ``0..n-1`` internally; :func:`build_graph` accepts the 1-based
labels used in edge-list files. Edge ``k`` has two half-edges (darts):
``2k`` at its tail and ``2k + 1`` at its head, so ``twin(d) == d ^ 1``.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

import numpy as np
from numba import njit


class LoopEdge(ValueError):
    def __init__(self, v: int):
        super().__init__(f"loop at vertex {v}")
        self.vertex = v


class VertexOutOfRange(ValueError):
    pass


class HalfEdge(NamedTuple):
    edge: int
    at_head: bool

    @property
    def dart(self) -> int:
        return 2 * self.edge + int(self.at_head)

    @classmethod
    def from_dart(cls, d: int) -> "HalfEdge":
        return cls(d >> 1, bool(d & 1))

    def twin(self) -> "HalfEdge":
        return HalfEdge(self.edge, not self.at_head)


class Graph:
    """Immutable multigraph.

    ``inc_ptr``/``inc_dart`` is a CSR layout of the darts at each vertex,
    in the order the edges were inserted. Loops are rejected unless the
    graph is built with ``allow_loops=True`` (used only for certifying
    rotation files that carry loops).
    """

    __slots__ = ("n", "tails", "heads", "inc_ptr", "inc_dart")

    def __init__(self, n: int, tails, heads, *, allow_loops: bool = False):
        tails = np.ascontiguousarray(tails, dtype=np.int64)
        heads = np.ascontiguousarray(heads, dtype=np.int64)
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        if tails.shape != heads.shape or tails.ndim != 1:
            raise ValueError("tails and heads must be 1-d arrays of equal length")
        if len(tails) and (
            min(tails.min(), heads.min()) < 0 or max(tails.max(), heads.max()) >= n
        ):
            raise VertexOutOfRange(f"edge endpoint outside 0..{n - 1}")
        if not allow_loops:
            loops = np.flatnonzero(tails == heads)
            if len(loops):
                raise LoopEdge(int(tails[loops[0]]))
        self.n = int(n)
        self.tails = tails
        self.heads = heads
        self.tails.setflags(write=False)
        self.heads.setflags(write=False)
        self.inc_ptr, self.inc_dart = _incidence(self.n, tails, heads)
        self.inc_ptr.setflags(write=False)
        self.inc_dart.setflags(write=False)

    @property
    def m(self) -> int:
        return len(self.tails)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.tails.tolist(), self.heads.tolist()))

    def edge_list(self) -> list[tuple[int, int]]:
        """Edges with 1-based labels, in id order."""
        return [(u + 1, v + 1) for u, v in self.edges]

    def incidence(self, v: int) -> list[tuple[int, bool]]:
        """``(edge id, at_head)`` for each edge end at ``v`` in insertion order."""
        darts = self.inc_dart[self.inc_ptr[v] : self.inc_ptr[v + 1]]
        return [(int(d) >> 1, bool(d & 1)) for d in darts]

    def degree(self, v: int) -> int:
        return int(self.inc_ptr[v + 1] - self.inc_ptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.inc_ptr)

    def dart_vertex(self, d: int) -> int:
        e = d >> 1
        return int(self.heads[e] if d & 1 else self.tails[e])

    def dart_at(self, e: int, v: int) -> int:
        """The dart of edge ``e`` leaving ``v`` (tail dart for loops)."""
        return 2 * e if self.tails[e] == v else 2 * e + 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.tails, other.tails)
            and np.array_equal(self.heads, other.heads)
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(
    n: int, edge_list: Iterable[Sequence[int]], *, allow_loops: bool = False
) -> Graph:
    """Build a graph from 1-based vertex pairs; edge ids follow list order."""
    pairs = np.asarray(list(edge_list), dtype=np.int64).reshape(-1, 2)
    if len(pairs) and (pairs.min() < 1 or pairs.max() > n):
        raise VertexOutOfRange(f"edge endpoint outside 1..{n}")
    return Graph(n, pairs[:, 0] - 1, pairs[:, 1] - 1, allow_loops=allow_loops)


def _incidence(n: int, tails: np.ndarray, heads: np.ndarray):
    # dart 2k at tails[k], 2k+1 at heads[k]; a stable sort keeps insertion order
    owner = np.empty(2 * len(tails), dtype=np.int64)
    owner[0::2] = tails
    owner[1::2] = heads
    inc_dart = np.argsort(owner, kind="stable").astype(np.int64)
    inc_ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(owner, minlength=n), out=inc_ptr[1:])
    return inc_ptr, inc_dart


@njit(cache=True)
def _component_labels(n, tails, heads, inc_ptr, inc_dart):
    label = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    count = 0
    for s in range(n):
        if label[s] != -1:
            continue
        label[s] = count
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            v = queue[head]
            head += 1
            for i in range(inc_ptr[v], inc_ptr[v + 1]):
                d = inc_dart[i]
                e = d >> 1
                w = tails[e] if d & 1 else heads[e]
                if label[w] == -1:
                    label[w] = count
                    queue[tail] = w
                    tail += 1
        count += 1
    return label, count


def component_labels(g: Graph) -> tuple[np.ndarray, int]:
    return _component_labels(g.n, g.tails, g.heads, g.inc_ptr, g.inc_dart)


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex sets of the components, ordered by smallest vertex."""
    label, count = component_labels(g)
    order = np.argsort(label, kind="stable")
    bounds = np.cumsum(np.bincount(label, minlength=count))[:-1]
    return [part.tolist() for part in np.split(order, bounds)]
