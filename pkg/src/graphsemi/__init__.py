"""Graph inverse semigroups: exact algebra, metrics, topologies and models."""

from .algebra import ZERO, PathPair, inv, mul
from .graph import Graph, Path, RayGraph, build_graph, line, load_graph, make_path, ray, rose

__version__ = "0.1.0"

__all__ = [
    "ZERO",
    "Graph",
    "Path",
    "PathPair",
    "RayGraph",
    "build_graph",
    "inv",
    "line",
    "load_graph",
    "make_path",
    "mul",
    "ray",
    "rose",
]
