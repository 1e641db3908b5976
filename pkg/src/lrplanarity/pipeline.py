"""End-to-end test and embedding of a (possibly disconnected) graph."""

from __future__ import annotations

from dataclasses import dataclass

from .embed import RotationSystem, build_rotation
from .graph import Graph
from .lrtest import LrOutcome, test_planarity
from .tremaux import TremauxData, run_dfs
from .ttorder import SortedAdjacency, tt_sort


@dataclass(eq=False)
class PlanarityResult:
    graph: Graph
    tremaux: TremauxData
    adjacency: SortedAdjacency
    outcome: LrOutcome
    rotation: RotationSystem | None = None

    @property
    def planar(self) -> bool:
        return self.outcome.planar


def check_planarity(g: Graph, *, embed: bool = True, trace: bool = False,
                    check: bool = False, record: bool = False) -> PlanarityResult:
    """One DFS per component (rooted at its smallest vertex), then the test."""
    t = run_dfs(g, 0, forest=True)
    adj = tt_sort(g, t)
    outcome = test_planarity(g, t, adj, trace=trace, check=check, record=record)
    rot = build_rotation(g, t, adj, outcome) if embed and outcome.planar else None
    return PlanarityResult(g, t, adj, outcome, rot)


def is_planar(g: Graph) -> bool:
    return check_planarity(g, embed=False).planar
