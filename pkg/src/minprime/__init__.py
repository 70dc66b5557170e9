"""Prime graphs and posets, neighborhood lattices, and finite extraction procedures."""
from .errors import GuardExceeded, MinprimeError, SearchInconclusive
from .graph_core import Graph, IncidenceStructure, Poset

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GuardExceeded",
    "IncidenceStructure",
    "MinprimeError",
    "Poset",
    "SearchInconclusive",
    "__version__",
]
