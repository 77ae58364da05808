"""Linear-algebra ground truth: boundary matrix reduction and Z2 ranks.

Nothing here touches Morse graphs.  The results are what the Morse based
pipelines are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import Cell, ChainComplex, ContractError
from .intervals import INF, PersistenceIntervals


@dataclass
class SortedBoundaryMatrix:
    """Z2 boundary matrix with rows and columns in ``(filtration, dim, id)`` order.

    ``columns[j]`` lists the row positions of the faces of ``cells[j]`` in
    increasing order, so its lowest one is the last entry.  ``additions``
    records ``(target, source)`` for every column addition performed by
    :func:`matrix_reduce`.
    """

    cells: tuple[Cell, ...]
    columns: list[list[int]]
    additions: list[tuple[int, int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.cells)

    def low(self, j: int) -> int | None:
        col = self.columns[j]
        return col[-1] if col else None

    def collisions(self) -> list[tuple[int, int]]:
        """Pairs ``(k, j)``, ``k < j``, of nonzero columns with the same low."""
        first: dict[int, int] = {}
        found = []
        for j, col in enumerate(self.columns):
            if col:
                if col[-1] in first:
                    found.append((first[col[-1]], j))
                else:
                    first[col[-1]] = j
        return found

    def to_dense(self) -> list[list[int]]:
        n = len(self.cells)
        rows = [[0] * n for _ in range(n)]
        for j, col in enumerate(self.columns):
            for i in col:
                rows[i][j] = 1
        return rows


def build_matrix(complex: ChainComplex) -> SortedBoundaryMatrix:
    ptr = complex.bd_indptr.tolist()
    idx = complex.bd_indices.tolist()
    # complex positions already follow the total order
    return SortedBoundaryMatrix(complex.cells, [idx[ptr[j]:ptr[j + 1]] for j in range(len(complex))])


def matrix_reduce(matrix: SortedBoundaryMatrix) -> SortedBoundaryMatrix:
    """Left-to-right column reduction; returns a new matrix with the additions logged."""
    columns = [list(c) for c in matrix.columns]
    additions = list(matrix.additions)
    pivot: dict[int, int] = {}
    for j, col in enumerate(columns):
        while col and col[-1] in pivot:
            k = pivot[col[-1]]
            col = sorted(set(col).symmetric_difference(columns[k]))
            additions.append((j, k))
        columns[j] = col
        if col:
            pivot[col[-1]] = j
    return SortedBoundaryMatrix(matrix.cells, columns, additions)


def read_intervals(reduced: SortedBoundaryMatrix) -> PersistenceIntervals:
    """Intervals from the lows of a reduced matrix; zero-length pairs are only counted."""
    if reduced.collisions():
        raise ContractError("matrix is not reduced: two columns share a lowest one")
    cells = reduced.cells
    out = PersistenceIntervals()
    killed = set()
    for j, col in enumerate(reduced.columns):
        if not col:
            continue
        k = col[-1]
        killed.add(k)
        if cells[k].filtration < cells[j].filtration:
            out.add(cells[k].dim, cells[k].filtration, cells[j].filtration)
        else:
            out.zero_length += 1
    for i, col in enumerate(reduced.columns):
        if not col and i not in killed:
            out.add(cells[i].dim, cells[i].filtration, INF)
    return out


def reduction_intervals(complex: ChainComplex) -> PersistenceIntervals:
    """``read_intervals(matrix_reduce(build_matrix(complex)))``."""
    return read_intervals(matrix_reduce(build_matrix(complex)))


def _gf2_rank(columns: list[int]) -> int:
    basis: dict[int, int] = {}
    for v in columns:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def betti_rank_oracle(complex: ChainComplex) -> list[int]:
    """Betti numbers as ``n_p - rank d_p - rank d_{p+1}`` by Gaussian elimination over Z2."""
    top = complex.top_dim
    if top < 0:
        return []
    counts = complex.cell_counts()
    # rows indexed by position inside the face dimension
    index = {}
    seen = [0] * (top + 1)
    for c in complex:
        index[c.id] = seen[c.dim]
        seen[c.dim] += 1
    columns: list[list[int]] = [[] for _ in range(top + 1)]
    for c in complex:
        mask = 0
        for f in complex.faces(c.id):
            mask |= 1 << index[f]
        columns[c.dim].append(mask)
    ranks = [_gf2_rank(columns[p]) if p > 0 else 0 for p in range(top + 1)] + [0]
    return [counts[p] - ranks[p] - ranks[p + 1] for p in range(top + 1)]
