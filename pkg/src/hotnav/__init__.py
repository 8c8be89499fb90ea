"""hotnav: build text hypergraphs from document collections and measure navigability."""

from .hypergraph import HoT, Hyperedge, HypergraphError, ParseError, UnknownNodeError, ValidationError

__version__ = "0.1.0"

__all__ = [
    "HoT",
    "Hyperedge",
    "HypergraphError",
    "ParseError",
    "UnknownNodeError",
    "ValidationError",
    "__version__",
]
