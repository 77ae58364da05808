"""Homology and persistent homology over Z2 via iterated discrete Morse decomposition."""

from .complex import Cell, Chain, ChainComplex, ContractError, ValidationReport, validate
from .homology import IterationTrace, betti_numbers, iterate_to_fixpoint
from .intervals import INF, PersistenceInterval, PersistenceIntervals
from .io import FormatError, format_boundary, parse_boundary_format, parse_simplicial_format
from .morse import (DOWNWARD_MAX_FACE, FILTRATION_COMPATIBLE, UNCONSTRAINED, Matching,
                    MatchingPolicy, MorseGraph, assert_acyclic, build_morse_complex,
                    build_morse_graph, compute_matching, morse_boundary, morse_complex)
from .oracle import betti_rank_oracle, build_matrix, matrix_reduce, read_intervals, reduction_intervals
from .persistence import persistence_pipeline, persistence_via_morse, simplify_filtered

__all__ = [
    "Cell", "Chain", "ChainComplex", "ContractError", "ValidationReport", "validate",
    "IterationTrace", "betti_numbers", "iterate_to_fixpoint",
    "INF", "PersistenceInterval", "PersistenceIntervals",
    "FormatError", "format_boundary", "parse_boundary_format", "parse_simplicial_format",
    "DOWNWARD_MAX_FACE", "FILTRATION_COMPATIBLE", "UNCONSTRAINED", "Matching", "MatchingPolicy",
    "MorseGraph", "assert_acyclic", "build_morse_complex", "build_morse_graph", "compute_matching",
    "morse_boundary", "morse_complex",
    "betti_rank_oracle", "build_matrix", "matrix_reduce", "read_intervals", "reduction_intervals",
    "persistence_pipeline", "persistence_via_morse", "simplify_filtered",
]
