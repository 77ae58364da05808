"""Persistence intervals through filtration-compatible simplification and downward pairing."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable

from .complex import ChainComplex, ContractError
from .homology import iterate_to_fixpoint
from .intervals import INF, PersistenceIntervals
from .morse import FILTRATION_COMPATIBLE, MatchingPolicy, WorkingComplex, best_lower_face


def simplify_filtered(complex: ChainComplex) -> ChainComplex:
    """Iterate filtration-compatible Morse reduction to its fixpoint.

    The result has the same persistence as the input and one cell per
    endpoint of a nonzero-length interval.
    """
    fixpoint, _ = iterate_to_fixpoint(complex, MatchingPolicy(FILTRATION_COMPATIBLE))
    return fixpoint


def check_strict_faces(complex: ChainComplex) -> None:
    """Raise ``ContractError`` unless every face enters strictly before its coface."""
    filt = complex.filtrations
    for i in range(len(complex)):
        faces = complex.bd_indices[complex.bd_indptr[i]:complex.bd_indptr[i + 1]]
        bad = faces[filt[faces] >= filt[i]]
        if len(bad):
            raise ContractError(
                f"cell {complex.ids[i]} and its face {complex.ids[bad[0]]} share filtration value "
                f"{filt[i]}; run simplify_filtered first"
            )


def _sweep_levels(work: WorkingComplex, levels: Iterable[int],
                  out: PersistenceIntervals) -> None:
    """Pair cofaces at each level with their highest face, one pair at a time.

    Only cofaces whose filtration equals the current level are considered.
    A pass over the level's cells in id order is repeated until it makes no
    pair.  Levels are used in the order given.
    """
    by_level: dict[int, list[int]] = defaultdict(list)
    for c in sorted(work.filtration):
        by_level[work.filtration[c]].append(c)
    for level in levels:
        progress = True
        while progress:
            progress = False
            for a in by_level.get(level, ()):
                if a not in work:
                    continue
                b = best_lower_face(work.boundary[a], work.filtration, level)
                if b is None:
                    continue
                out.add(work.dim[b], work.filtration[b], level)
                work.contract(a, b)
                progress = True


def persistence_via_morse(complex: ChainComplex) -> PersistenceIntervals:
    """Persistence intervals of a simplified complex by downward Morse pairing.

    Levels are processed from the second lowest upwards; each pair
    ``(A, b)`` reports ``[g(b), g(A)]`` in the dimension of ``b`` and is
    contracted before the next pair is chosen.  Cells left at the end
    report infinite intervals.  The input must have every face strictly
    below its coface, as the output of :func:`simplify_filtered` does.
    """
    check_strict_faces(complex)
    work = WorkingComplex(complex)
    levels = sorted(set(work.filtration.values()))
    out = PersistenceIntervals()
    _sweep_levels(work, levels[1:], out)
    for c in work.boundary:
        out.add(work.dim[c], work.filtration[c], INF)
    return out


def persistence_pipeline(complex: ChainComplex) -> PersistenceIntervals:
    """Persistence intervals of an arbitrary filtered complex."""
    return persistence_via_morse(simplify_filtered(complex))
