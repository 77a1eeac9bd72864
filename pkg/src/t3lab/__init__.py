"""Matchings, covers and independence-complex connectedness for
tripartite 3-uniform multihypergraphs."""

from t3lab.errors import (
    InputError,
    NoTypedPair,
    PreconditionError,
    ResourceError,
    TheoryDiscrepancy,
)
from t3lab.hypercore import BipartiteMultigraph, Tripartite3Graph

__version__ = "0.1.0"

__all__ = [
    "BipartiteMultigraph",
    "InputError",
    "NoTypedPair",
    "PreconditionError",
    "ResourceError",
    "TheoryDiscrepancy",
    "Tripartite3Graph",
]
