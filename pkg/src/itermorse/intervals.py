"""Persistence interval types shared by the Morse pipeline and the oracle."""

from __future__ import annotations

import math
from collections import Counter
from typing import Iterable, Iterator, NamedTuple

INF = math.inf


class PersistenceInterval(NamedTuple):
    dim: int
    birth: int
    death: float  # an int, or math.inf

    @property
    def is_finite(self) -> bool:
        return self.death != INF

    @property
    def length(self) -> float:
        return self.death - self.birth


class PersistenceIntervals:
    """Multiset of persistence intervals.

    ``zero_length`` counts pairs with equal birth and death that were seen
    but not recorded; it does not take part in equality.
    """

    def __init__(self, intervals: Iterable[tuple] = (), zero_length: int = 0):
        self._counts: Counter[PersistenceInterval] = Counter()
        self.zero_length = zero_length
        for iv in intervals:
            self.add(*iv)

    def add(self, dim: int, birth: int, death: float) -> None:
        death = INF if death in (INF, None) else int(death)
        if not birth <= death:
            raise ValueError(f"interval [{birth}, {death}] ends before it starts")
        self._counts[PersistenceInterval(int(dim), int(birth), death)] += 1

    def __iter__(self) -> Iterator[PersistenceInterval]:
        return iter(sorted(self._counts.elements()))

    def __len__(self) -> int:
        return sum(self._counts.values())

    def __eq__(self, other) -> bool:
        if isinstance(other, PersistenceIntervals):
            return self._counts == other._counts
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"{d}:[{b},{'inf' if x == INF else x}]" for d, b, x in self)
        return f"PersistenceIntervals({body})"

    def finite(self) -> list[PersistenceInterval]:
        return [iv for iv in self if iv.is_finite]

    def infinite(self) -> list[PersistenceInterval]:
        return [iv for iv in self if not iv.is_finite]

    def difference(self, other: PersistenceIntervals) -> tuple[list, list]:
        """Intervals only in ``self`` and only in ``other``, with multiplicity."""
        return (sorted((self._counts - other._counts).elements()),
                sorted((other._counts - self._counts).elements()))
