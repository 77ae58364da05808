"""Betti numbers from the fixed point of iterated Morse complexes."""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import ChainComplex
from .morse import MatchingPolicy, build_morse_complex


@dataclass
class IterationTrace:
    """Cell counts of ``K, M(K), M(M(K)), ...``.

    The last iteration makes no pair, so the final two entries are equal.
    ``iterations`` counts Morse complex constructions, the no-op one included.
    """

    sizes: list[int] = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.sizes) - 1

    def check(self) -> None:
        """Raise ``AssertionError`` if the sizes are not strictly shrinking before the end."""
        s = self.sizes
        assert len(s) >= 2 and s[-1] == s[-2], f"trace does not end at a fixed point: {s}"
        assert all(a > b for a, b in zip(s[:-2], s[1:-1])), f"sizes not strictly decreasing: {s}"
        assert self.iterations <= s[0] // 2 + 1, f"{self.iterations} iterations for {s[0]} cells"

    def __str__(self) -> str:
        return f"iterations: {self.iterations}; sizes: {' '.join(map(str, self.sizes))}"


def iterate_to_fixpoint(complex: ChainComplex, policy: MatchingPolicy = MatchingPolicy(),
                        on_iteration=None) -> tuple[ChainComplex, IterationTrace]:
    """Apply Morse complex construction until a pass matches nothing.

    ``on_iteration``, if given, is called with each intermediate complex
    (the input first, then every Morse complex produced).
    """
    trace = IterationTrace([len(complex)])
    current = complex
    if on_iteration is not None:
        on_iteration(current)
    while True:
        reduced, matching = build_morse_complex(current, policy)
        trace.sizes.append(len(reduced))
        if not matching.pairs:
            return current, trace
        current = reduced
        if on_iteration is not None:
            on_iteration(current)


def betti_numbers(complex: ChainComplex) -> list[int]:
    """Z2 Betti numbers ``[b_0, ..., b_top]``: surviving cells per dimension at the fixpoint."""
    fixpoint, _ = iterate_to_fixpoint(complex, MatchingPolicy())
    betti = [0] * (complex.top_dim + 1)
    for cell in fixpoint:
        betti[cell.dim] += 1
    return betti
