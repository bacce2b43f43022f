"""Controllability of quantum walks on graphs: exact walk-matrix, spectral and
Lie-algebraic criteria, a census of controllable graphs, and schedule synthesis."""

__version__ = "0.1.0"

from .controllability import (
    ControllabilityReport,
    WalkMatrix,
    automorphisms_fixing,
    cone_theorem_check,
    controllable,
    is_controllable,
    spectral_criterion,
    walk_matrix,
    walk_moments,
)
from .graph import Graph, VertexSet, attach_path, cone, delete_vertex, from_graph6, path, to_graph6

__all__ = [
    "ControllabilityReport",
    "Graph",
    "VertexSet",
    "WalkMatrix",
    "attach_path",
    "automorphisms_fixing",
    "cone",
    "cone_theorem_check",
    "controllable",
    "delete_vertex",
    "from_graph6",
    "is_controllable",
    "path",
    "spectral_criterion",
    "to_graph6",
    "walk_matrix",
    "walk_moments",
]
