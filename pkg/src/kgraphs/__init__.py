"""Exact finiteness certificates and K-theory data for finite k-graphs."""

__version__ = "0.1.0"

from .decider import (NO, UNKNOWN, YES, FaithfulTrace, PositiveWitness, Verdict, classify,
                      decide_condition, verify_trace, verify_witness)
from .graph import KGraph, degree_matrix, is_cofinal, make_kgraph, validate

__all__ = [
    "KGraph", "validate", "make_kgraph", "degree_matrix", "is_cofinal",
    "classify", "decide_condition", "verify_trace", "verify_witness",
    "FaithfulTrace", "PositiveWitness", "Verdict", "YES", "NO", "UNKNOWN",
]
