"""Local reconstructors and tolerant testers for sparse graphs.

Each reconstructor wraps an input graph that is close to a property
(connectivity, strong connectivity, k-edge-connectivity, small diameter) and
answers edge queries for a fixed corrected graph that has the property,
reading only a small part of the input per answer.
"""
from .connect import ConnConfig, Connected, ModConnected
from .diameter import DiamConfig, SmallDiameter
from .graph import OracleHandle, SparseGraph, graph_distance, load_graph, save_graph
from .kconn import KConnConfig, KConnected
from .rand import RandomSource
from .strong import StrongConnConfig, StronglyConnected
from .tolerant import ToleranceParams, estimate_reconstruction_distance, tolerant_tester

__version__ = "0.1.0"

__all__ = [
    "ConnConfig", "Connected", "ModConnected", "DiamConfig", "SmallDiameter",
    "OracleHandle", "SparseGraph", "graph_distance", "load_graph", "save_graph",
    "KConnConfig", "KConnected", "RandomSource", "StrongConnConfig", "StronglyConnected",
    "ToleranceParams", "estimate_reconstruction_distance", "tolerant_tester",
]
