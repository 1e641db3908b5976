"""Left-Right planarity testing and planar embedding on Tremaux trees."""

from .embed import CertResult, FaceTrace, RotationSystem, build_rotation, certify, trace_faces
from .graph import Graph, HalfEdge, LoopEdge, VertexOutOfRange, build_graph, connected_components
from .lrtest import ConstraintSystem, LrOutcome, SignedForest, test_planarity
from .pipeline import PlanarityResult, check_planarity, is_planar
from .tremaux import EdgeClass, NotConnected, TremauxData, run_dfs
from .ttorder import SortedAdjacency, tt_sort

__all__ = [
    "CertResult", "ConstraintSystem", "EdgeClass", "FaceTrace", "Graph", "HalfEdge",
    "LoopEdge", "LrOutcome", "NotConnected", "PlanarityResult", "RotationSystem",
    "SignedForest", "SortedAdjacency", "TremauxData", "VertexOutOfRange",
    "build_graph", "build_rotation", "certify", "check_planarity", "connected_components",
    "is_planar", "run_dfs", "test_planarity", "trace_faces", "tt_sort",
]
