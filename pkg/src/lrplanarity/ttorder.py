"""Outgoing edges of every vertex in a fixed linear extension of the
thin/thick precedence order.

Key of an outgoing edge: ``2 * depth(low) + (1 if THICK else 0)``. One
global counting sort over all edges keeps incidence order among equal keys.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .graph import Graph
from .tremaux import EdgeClass, TremauxData


@dataclass(frozen=True, eq=False)
class SortedAdjacency:
    ptr: np.ndarray
    edges: np.ndarray
    key: np.ndarray

    def outgoing(self, v: int) -> list[int]:
        return self.edges[self.ptr[v] : self.ptr[v + 1]].tolist()


def sort_keys(t: TremauxData) -> np.ndarray:
    thick = (t.edge_class == EdgeClass.THICK).astype(np.int64)
    return 2 * t.depth[t.low] + thick


@njit(cache=True)
def _bucket_sort(n, key, src, out_ptr, out_edge):
    nb = 2 * n + 2
    count = np.zeros(nb + 1, dtype=np.int64)
    for e in out_edge:
        count[key[e] + 1] += 1
    for i in range(nb):
        count[i + 1] += count[i]
    by_key = np.empty(len(out_edge), dtype=np.int64)
    for e in out_edge:
        by_key[count[key[e]]] = e
        count[key[e]] += 1
    # redistribute to tails; bucket order is preserved per vertex
    fill = out_ptr[:-1].copy()
    edges = np.empty(len(out_edge), dtype=np.int64)
    for e in by_key:
        v = src[e]
        edges[fill[v]] = e
        fill[v] += 1
    return edges


def tt_sort(g: Graph, t: TremauxData) -> SortedAdjacency:
    key = sort_keys(t)
    edges = _bucket_sort(g.n, key, t.src, t.out_ptr, t.out_edge)
    return SortedAdjacency(ptr=t.out_ptr, edges=edges, key=key)
