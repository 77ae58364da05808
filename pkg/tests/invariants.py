"""Per-instance checks for the oracle equivalence, cardinality and structural criteria."""

from __future__ import annotations

from itermorse.complex import ChainComplex, validate
from itermorse.homology import iterate_to_fixpoint
from itermorse.morse import (FILTRATION_COMPATIBLE, UNCONSTRAINED, MatchingPolicy,
                             assert_acyclic, build_morse_graph, compute_matching)
from itermorse.oracle import betti_rank_oracle, reduction_intervals
from itermorse.persistence import persistence_via_morse


def _padded(betti, top):
    return list(betti) + [0] * (top + 1 - len(betti))


def equivalence_failure(complex: ChainComplex) -> str | None:
    """Morse pipeline intervals against the reduction oracle."""
    simplified, _ = iterate_to_fixpoint(complex, MatchingPolicy(FILTRATION_COMPATIBLE))
    morse = persistence_via_morse(simplified)
    oracle = reduction_intervals(complex)
    if morse != oracle:
        return f"pipeline {morse!r} != oracle {oracle!r}"
    return None


def cardinality_failure(complex: ChainComplex) -> str | None:
    simplified, _ = iterate_to_fixpoint(complex, MatchingPolicy(FILTRATION_COMPATIBLE))
    oracle = reduction_intervals(complex)
    expected = 2 * len(oracle.finite()) + len(oracle.infinite())
    if len(simplified) != expected:
        return f"{len(simplified)} cells after simplification, expected {expected}"
    return None


def structural_failure(complex: ChainComplex) -> str | None:
    """Acyclic Morse graphs, valid Morse complexes, positive lengths, stable Betti numbers."""
    top = complex.top_dim
    reference = betti_rank_oracle(complex)
    for mode in (UNCONSTRAINED, FILTRATION_COMPATIBLE):
        policy = MatchingPolicy(mode)
        problems: list[str] = []

        def visit(current: ChainComplex):
            report = validate(current)
            if not report:
                problems.append(f"{mode}: invalid Morse complex: {report}")
            graph = build_morse_graph(current, compute_matching(current, policy))
            cycle = assert_acyclic(graph)
            if cycle is not None:
                problems.append(f"{mode}: Morse graph has cycle {cycle}")
            betti = _padded(betti_rank_oracle(current), top)
            if betti != reference:
                problems.append(f"{mode}: Betti numbers changed to {betti} from {reference}")

        fixpoint, trace = iterate_to_fixpoint(complex, policy, on_iteration=visit)
        if problems:
            return problems[0]
        try:
            trace.check()
        except AssertionError as exc:
            return f"{mode}: {exc}"
        if mode == UNCONSTRAINED:
            counts = [0] * (top + 1)
            for c in fixpoint:
                counts[c.dim] += 1
            if counts != reference:
                return f"fixpoint cell counts {counts} != rank oracle {reference}"
        else:
            intervals = persistence_via_morse(fixpoint)
            short = [iv for iv in intervals.finite() if iv.length <= 0]
            if short or intervals.zero_length:
                return f"non-positive interval emitted: {short}"
    return None
