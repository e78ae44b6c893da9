"""Constructive acyclic edge coloring of planar graphs with at most Δ+7 colors."""
from .graph import Graph, GraphError, EmbeddingError, PlaneEmbedding, build_graph
from .coloring import EdgeColoring, verify_acyclic, find_bichromatic_cycle
from .configurations import Configuration, check_configuration, find_configuration
from .colorizer import ColorResult, acyclic_color, color_graph

__all__ = [
    "Graph", "GraphError", "EmbeddingError", "PlaneEmbedding", "build_graph",
    "EdgeColoring", "verify_acyclic", "find_bichromatic_cycle",
    "Configuration", "check_configuration", "find_configuration",
    "ColorResult", "acyclic_color", "color_graph",
]
__version__ = "0.1.0"
