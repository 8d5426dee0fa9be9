"""Reciprocity bounds, graphicality and 3-path rewiring for directed graphs."""

from .core import BiSequence, DegreeSummary, Digraph, bi_sequence, decompose, degree_summary, reciprocity, rho
from .errors import ReciproError

__all__ = [
    "BiSequence",
    "DegreeSummary",
    "Digraph",
    "ReciproError",
    "bi_sequence",
    "decompose",
    "degree_summary",
    "reciprocity",
    "rho",
]

__version__ = "0.1.0"
