"""Combinatorics of minuscule Schubert varieties through their quivers."""
from .rootcore import CosetWord, InvalidWordError, RootSystemId, parse_system
from .quiver import (
    NotAnAntichainError,
    Quiver,
    ambient_quiver,
    build_quiver,
    enumerate_schubert,
    schubert_from_antichain,
)
from .chow import weil_report
from .models import enumerate_minimal_orders, flop_graph, has_ih_small_resolution, model_report
from .stringy import crepant_obstruction, stringy_euler

__all__ = [
    "CosetWord",
    "InvalidWordError",
    "NotAnAntichainError",
    "Quiver",
    "RootSystemId",
    "ambient_quiver",
    "build_quiver",
    "crepant_obstruction",
    "enumerate_minimal_orders",
    "enumerate_schubert",
    "flop_graph",
    "has_ih_small_resolution",
    "model_report",
    "parse_system",
    "schubert_from_antichain",
    "stringy_euler",
    "weil_report",
]
