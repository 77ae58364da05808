"""Finite filtered chain complexes over Z2.

A complex is a set of cells, each with a dimension and an integer
filtration value, plus an incidence relation between consecutive
dimensions.  Coefficients are Z2 throughout, so the boundary of a cell is
just the set of its faces.

Cells are kept in the total order ``(filtration, dim, id)``.  Every other
module relies on that order for tie-breaking, so it is fixed here once.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import numpy as np


class ContractError(Exception):
    """A precondition of an operation was violated by its caller."""


@dataclass(frozen=True)
class Cell:
    id: int
    dim: int
    filtration: int

    def __post_init__(self):
        if isinstance(self.id, bool) or not isinstance(self.id, (int, np.integer)) or self.id < 0:
            raise ValueError(f"cell id must be a non-negative integer, got {self.id!r}")
        if isinstance(self.dim, bool) or not isinstance(self.dim, (int, np.integer)) or self.dim < 0:
            raise ValueError(f"cell dimension must be a non-negative integer, got {self.dim!r}")
        if isinstance(self.filtration, bool) or not isinstance(self.filtration, (int, np.integer)):
            raise ValueError(f"filtration must be an integer, got {self.filtration!r}")

    @property
    def key(self) -> tuple[int, int, int]:
        """Sort key of the complex-wide total order."""
        return (self.filtration, self.dim, self.id)


@dataclass(frozen=True)
class Chain:
    """A Z2 chain: a set of cells of one dimension."""

    dim: int
    support: frozenset[int] = frozenset()

    def __post_init__(self):
        if not isinstance(self.support, frozenset):
            object.__setattr__(self, "support", frozenset(self.support))

    def __len__(self) -> int:
        return len(self.support)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.support))

    def __contains__(self, cell_id) -> bool:
        return cell_id in self.support

    def __add__(self, other: Chain) -> Chain:
        return chain_add(self, other)

    @property
    def is_zero(self) -> bool:
        return not self.support


def chain_add(x: Chain, y: Chain) -> Chain:
    """Z2 sum of two chains of the same dimension."""
    if x.dim != y.dim:
        raise ContractError(f"cannot add a {x.dim}-chain to a {y.dim}-chain")
    return Chain(x.dim, x.support ^ y.support)


def _csr(rows: list[list[int]]) -> tuple[np.ndarray, np.ndarray]:
    indptr = np.zeros(len(rows) + 1, dtype=np.int64)
    if rows:
        np.cumsum([len(r) for r in rows], out=indptr[1:])
    indices = np.fromiter((v for r in rows for v in r), dtype=np.int64, count=int(indptr[-1]))
    return indptr, indices


def _transpose(n: int, indptr: np.ndarray, indices: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    counts = np.bincount(indices, minlength=n) if len(indices) else np.zeros(n, dtype=np.int64)
    t_indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=t_indptr[1:])
    rows = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
    # stable sort keeps each transposed row sorted by source position
    order = np.argsort(indices, kind="stable")
    return t_indptr, rows[order]


class ChainComplex:
    """Immutable filtered chain complex with Z2 incidences.

    Args:
        cells: the cells; ids must be unique.
        boundary: maps a cell id to the ids of its faces.  Cells that are
            missing from the mapping have an empty boundary.

    Structural invariants (face dimensions, monotone filtration, ``dd = 0``)
    are not enforced here; :func:`validate` reports them.  Unknown face ids
    raise ``KeyError`` and repeated faces raise ``ValueError``.

    Internally cells are addressed by their *position* in the total order,
    and incidences are stored as CSR arrays over positions in both
    directions.  The compiled kernels work on those arrays directly.
    """

    __slots__ = (
        "_cells", "_pos", "ids", "dims", "filtrations",
        "bd_indptr", "bd_indices", "cbd_indptr", "cbd_indices",
    )

    def __init__(self, cells: Iterable[Cell], boundary: Mapping[int, Iterable[int]] | None = None):
        cells = sorted(cells, key=lambda c: c.key)
        pos: dict[int, int] = {}
        for i, c in enumerate(cells):
            if c.id in pos:
                raise ValueError(f"duplicate cell id {c.id}")
            pos[c.id] = i
        boundary = boundary or {}
        for cid in boundary:
            if cid not in pos:
                raise KeyError(f"boundary given for unknown cell {cid}")
        rows = []
        for c in cells:
            faces = list(boundary.get(c.id, ()))
            row = sorted(pos[f] if f in pos else _unknown_face(c.id, f) for f in faces)
            if len(set(row)) != len(row):
                raise ValueError(f"cell {c.id} lists a face more than once")
            rows.append(row)
        bd_indptr, bd_indices = _csr(rows)
        self._init_arrays(
            tuple(cells), pos,
            np.array([c.id for c in cells], dtype=np.int64),
            np.array([c.dim for c in cells], dtype=np.int64),
            np.array([c.filtration for c in cells], dtype=np.int64),
            bd_indptr, bd_indices,
        )

    def _init_arrays(self, cells, pos, ids, dims, filtrations, bd_indptr, bd_indices):
        self._cells = cells
        self._pos = pos
        self.ids = ids
        self.dims = dims
        self.filtrations = filtrations
        self.bd_indptr = bd_indptr
        self.bd_indices = bd_indices
        self.cbd_indptr, self.cbd_indices = _transpose(len(cells), bd_indptr, bd_indices)
        for a in (ids, dims, filtrations, bd_indptr, bd_indices, self.cbd_indptr, self.cbd_indices):
            a.setflags(write=False)

    @classmethod
    def _from_arrays(cls, ids, dims, filtrations, bd_indptr, bd_indices) -> ChainComplex:
        """Build from arrays already in total order; boundary rows sorted, positional."""
        self = cls.__new__(cls)
        ids = np.asarray(ids, dtype=np.int64)
        dims = np.asarray(dims, dtype=np.int64)
        filtrations = np.asarray(filtrations, dtype=np.int64)
        cells = tuple(Cell(int(i), int(d), int(f)) for i, d, f in zip(ids.tolist(), dims.tolist(), filtrations.tolist()))
        pos = {c.id: i for i, c in enumerate(cells)}
        self._init_arrays(cells, pos, ids, dims, filtrations,
                          np.asarray(bd_indptr, dtype=np.int64), np.asarray(bd_indices, dtype=np.int64))
        return self

    # -- basic access ---------------------------------------------------

    @property
    def cells(self) -> tuple[Cell, ...]:
        """Cells in ``(filtration, dim, id)`` order."""
        return self._cells

    def __len__(self) -> int:
        return len(self._cells)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self._cells)

    def __contains__(self, cell_id) -> bool:
        return cell_id in self._pos

    def __repr__(self) -> str:
        counts = self.cell_counts()
        return f"ChainComplex({len(self)} cells, by dim {counts})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self._cells == other._cells and self.boundary_map() == other.boundary_map()

    __hash__ = None

    @property
    def top_dim(self) -> int:
        """Largest cell dimension, ``-1`` for the empty complex."""
        return int(self.dims.max()) if len(self) else -1

    def cell(self, cell_id: int) -> Cell:
        return self._cells[self.position(cell_id)]

    def position(self, cell_id: int) -> int:
        try:
            return self._pos[cell_id]
        except KeyError:
            raise KeyError(f"unknown cell id {cell_id}") from None

    def faces(self, cell_id: int) -> tuple[int, ...]:
        i = self.position(cell_id)
        return tuple(self.ids[self.bd_indices[self.bd_indptr[i]:self.bd_indptr[i + 1]]].tolist())

    def cofaces(self, cell_id: int) -> tuple[int, ...]:
        i = self.position(cell_id)
        return tuple(self.ids[self.cbd_indices[self.cbd_indptr[i]:self.cbd_indptr[i + 1]]].tolist())

    def boundary_map(self) -> dict[int, frozenset[int]]:
        """``{id: frozenset(face ids)}`` for every cell."""
        ids = self.ids.tolist()
        ptr = self.bd_indptr.tolist()
        idx = self.bd_indices.tolist()
        return {ids[i]: frozenset(ids[j] for j in idx[ptr[i]:ptr[i + 1]]) for i in range(len(ids))}

    def cell_counts(self) -> list[int]:
        """Number of cells per dimension, indexed ``0..top_dim``."""
        if not len(self):
            return []
        return np.bincount(self.dims, minlength=self.top_dim + 1).tolist()

    def num_incidences(self) -> int:
        return int(self.bd_indptr[-1])


def _unknown_face(cell_id, face_id):
    raise KeyError(f"cell {cell_id} has unknown face {face_id}")


def boundary_of(complex: ChainComplex, c: int) -> Chain:
    """The chain of faces of ``c``."""
    cell = complex.cell(c)
    return Chain(cell.dim - 1, frozenset(complex.faces(c)))


def coboundary_of(complex: ChainComplex, c: int) -> Chain:
    """The chain of cofaces of ``c``."""
    cell = complex.cell(c)
    return Chain(cell.dim + 1, frozenset(complex.cofaces(c)))


# -- validation -----------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    """One broken invariant.

    ``kind`` is ``"dimension"`` (face of the wrong dimension),
    ``"filtration"`` (face enters after its coface) or ``"boundary"``
    (``other`` appears an odd number of times in the boundary of the
    boundary of ``cell``).
    """

    kind: str
    cell: int
    other: int

    def __str__(self) -> str:
        if self.kind == "dimension":
            return f"cell {self.cell}: face {self.other} has the wrong dimension"
        if self.kind == "filtration":
            return f"cell {self.cell}: face {self.other} has a larger filtration value"
        return f"cell {self.cell}: boundary of boundary contains {self.other}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(str(v) for v in self.violations)


def validate(complex: ChainComplex) -> ValidationReport:
    """Check face dimensions, filtration monotonicity and ``dd = 0``."""
    ids = complex.ids.tolist()
    dims = complex.dims.tolist()
    filt = complex.filtrations.tolist()
    ptr = complex.bd_indptr.tolist()
    idx = complex.bd_indices.tolist()
    violations = []
    for i in range(len(ids)):
        faces = idx[ptr[i]:ptr[i + 1]]
        for j in faces:
            if dims[j] != dims[i] - 1:
                violations.append(Violation("dimension", ids[i], ids[j]))
            if filt[j] > filt[i]:
                violations.append(Violation("filtration", ids[i], ids[j]))
        parity: dict[int, int] = defaultdict(int)
        for j in faces:
            for k in idx[ptr[j]:ptr[j + 1]]:
                parity[k] ^= 1
        for k in sorted(k for k, v in parity.items() if v):
            violations.append(Violation("boundary", ids[i], ids[k]))
    return ValidationReport(tuple(violations))
