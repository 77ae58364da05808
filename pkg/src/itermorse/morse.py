"""Acyclic Morse matchings, Morse graphs and Morse boundaries.

The Morse graph of a matching has one edge per incidence: coface -> face,
reversed to face -> coface on matched pairs.  A matching is valid when that
graph is acyclic.  The Morse boundary of a critical cell ``s`` is the set of
critical cells one dimension down reached from ``s`` by an odd number of
directed paths.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import kernels
from .complex import Chain, ChainComplex, ContractError

UNCONSTRAINED = "unconstrained"
FILTRATION_COMPATIBLE = "filtration_compatible"
DOWNWARD_MAX_FACE = "downward_max_face"
_MODES = (UNCONSTRAINED, FILTRATION_COMPATIBLE, DOWNWARD_MAX_FACE)


@dataclass(frozen=True)
class MatchingPolicy:
    """Which (face, coface) pairs a matching may use.

    ``unconstrained``: any incident pair.
    ``filtration_compatible``: only pairs with equal filtration values.
    ``downward_max_face``: a coface with ``g(coface) <= level_cap`` is matched
    with its face of largest filtration among faces strictly below it (ties:
    smallest id).  Pairs are produced one at a time, see
    :func:`compute_matching`.

    There is deliberately no tolerance parameter: matching across unequal
    filtration values inside a simplification pass changes the persistence.
    """

    mode: str = UNCONSTRAINED
    level_cap: int | None = None

    def __post_init__(self):
        if self.mode not in _MODES:
            raise ValueError(f"unknown matching mode {self.mode!r}; expected one of {_MODES}")
        if self.level_cap is not None and self.mode != DOWNWARD_MAX_FACE:
            raise ValueError("level_cap only applies to downward_max_face matchings")


@dataclass(frozen=True)
class Matching:
    """A partial pairing of cells with cofaces.

    ``pairs`` maps each matched face id to its coface id; ``critical`` holds
    the unmatched cells.
    """

    pairs: Mapping[int, int] = field(default_factory=dict)
    critical: frozenset[int] = frozenset()

    def __len__(self) -> int:
        return len(self.pairs)

    def partner(self, cell_id: int) -> int | None:
        """The cell matched with ``cell_id``, if any."""
        if cell_id in self.pairs:
            return self.pairs[cell_id]
        for b, a in self.pairs.items():
            if a == cell_id:
                return b
        return None

    @classmethod
    def from_pairs(cls, complex: ChainComplex, pairs: Iterable[tuple[int, int]]) -> Matching:
        """Matching from ``(coface, face)`` pairs; every other cell is critical."""
        face_to_coface: dict[int, int] = {}
        for a, b in pairs:
            if b in face_to_coface:
                raise ContractError(f"face {b} is matched with both {face_to_coface[b]} and {a}")
            face_to_coface[b] = a
        used = set(face_to_coface) | set(face_to_coface.values())
        return cls(face_to_coface, frozenset(c.id for c in complex if c.id not in used))


def _mate_array(complex: ChainComplex, matching: Matching) -> np.ndarray:
    mate = np.full(len(complex), -1, dtype=np.int64)
    for b, a in matching.pairs.items():
        if b not in complex or a not in complex:
            raise ContractError(f"matched pair ({a}, {b}) references an unknown cell")
        ia, ib = complex.position(a), complex.position(b)
        if b not in complex.faces(a):
            raise ContractError(f"cell {b} is not a face of {a}")
        if mate[ia] >= 0 or mate[ib] >= 0:
            raise ContractError(f"pair ({a}, {b}) reuses an already matched cell")
        mate[ia], mate[ib] = ib, ia
    return mate


def _matching_from_mate(complex: ChainComplex, mate: np.ndarray) -> Matching:
    ids = complex.ids.tolist()
    dims = complex.dims.tolist()
    pairs = {}
    critical = []
    for i, m in enumerate(mate.tolist()):
        if m < 0:
            critical.append(ids[i])
        elif dims[m] > dims[i]:
            pairs[ids[i]] = ids[m]
    return Matching(pairs, frozenset(critical))


# -- Morse graph ------------------------------------------------------------


class MorseGraph:
    """Directed graph over cell ids, stored as CSR over vertex positions."""

    def __init__(self, ids, dims, out_ptr, out_idx):
        self.ids = np.asarray(ids, dtype=np.int64)
        self.dims = np.asarray(dims, dtype=np.int64)
        self.out_ptr = np.asarray(out_ptr, dtype=np.int64)
        self.out_idx = np.asarray(out_idx, dtype=np.int64)
        self._pos = {v: i for i, v in enumerate(self.ids.tolist())}

    @classmethod
    def from_edges(cls, dims: Mapping[int, int], edges: Iterable[tuple[int, int]]) -> MorseGraph:
        """Build an arbitrary graph; ``dims`` gives every vertex and its dimension."""
        ids = sorted(dims)
        pos = {v: i for i, v in enumerate(ids)}
        succ: list[list[int]] = [[] for _ in ids]
        for u, v in edges:
            succ[pos[u]].append(pos[v])
        ptr = np.zeros(len(ids) + 1, dtype=np.int64)
        np.cumsum([len(s) for s in succ], out=ptr[1:])
        idx = np.array([w for s in succ for w in s], dtype=np.int64)
        return cls(ids, [dims[v] for v in ids], ptr, idx)

    def __len__(self) -> int:
        return len(self.ids)

    @property
    def num_edges(self) -> int:
        return int(self.out_ptr[-1])

    def successors(self, v: int) -> tuple[int, ...]:
        i = self._pos[v]
        return tuple(self.ids[self.out_idx[self.out_ptr[i]:self.out_ptr[i + 1]]].tolist())

    def edges(self) -> list[tuple[int, int]]:
        ids = self.ids.tolist()
        ptr = self.out_ptr.tolist()
        idx = self.out_idx.tolist()
        return [(ids[i], ids[j]) for i in range(len(ids)) for j in idx[ptr[i]:ptr[i + 1]]]

    def topological_rank(self) -> np.ndarray | None:
        """Index of every vertex in a topological order, or None if cyclic."""
        order = kernels.topological_order(self.out_ptr, self.out_idx)
        if len(order) < len(self):
            return None
        rank = np.empty(len(self), dtype=np.int64)
        rank[order] = np.arange(len(self), dtype=np.int64)
        return rank


def build_morse_graph(complex: ChainComplex, matching: Matching) -> MorseGraph:
    """One edge per incidence; coface -> face, reversed on matched pairs."""
    mate = _mate_array(complex, matching)
    ptr, idx = kernels.morse_graph(complex.dims, complex.bd_indptr, complex.bd_indices, mate)
    return MorseGraph(complex.ids, complex.dims, ptr, idx)


def assert_acyclic(graph: MorseGraph) -> list[int] | None:
    """Return None when ``graph`` is a DAG, otherwise one directed cycle as a list of ids."""
    order = kernels.topological_order(graph.out_ptr, graph.out_idx)
    if len(order) == len(graph):
        return None
    left = np.ones(len(graph), dtype=bool)
    left[order] = False
    # every leftover vertex keeps a leftover predecessor; walk backwards until a repeat
    preds: dict[int, int] = {}
    ptr = graph.out_ptr.tolist()
    idx = graph.out_idx.tolist()
    for u in np.flatnonzero(left).tolist():
        for w in idx[ptr[u]:ptr[u + 1]]:
            if left[w]:
                preds.setdefault(w, u)
    v = int(np.flatnonzero(left)[0])
    seen: dict[int, int] = {}
    walk = []
    while v not in seen:
        seen[v] = len(walk)
        walk.append(v)
        v = preds[v]
    cycle = walk[seen[v]:][::-1]
    ids = graph.ids.tolist()
    return [ids[i] for i in cycle]


# -- matchings --------------------------------------------------------------


def compute_matching(complex: ChainComplex, policy: MatchingPolicy = MatchingPolicy()) -> Matching:
    """Build an acyclic matching allowed by ``policy``.

    For ``unconstrained`` and ``filtration_compatible`` policies this
    repeatedly declares the lowest-dimensional unmarked cell critical and
    then matches every unmarked cell having exactly one unmarked face with
    that face.  The compatible policy counts only faces on the coface's own
    filtration level.  Both produce at least one pair whenever an allowed
    pair exists.

    ``downward_max_face`` returns at most one pair: the capped coface with
    smallest ``(filtration, id)`` that has a face strictly below it, paired
    with that face of largest filtration.  Committing pairs one at a time
    keeps the face choice valid after each boundary update.
    """
    if policy.mode == DOWNWARD_MAX_FACE:
        pair = _downward_pair(complex, policy.level_cap)
        return Matching.from_pairs(complex, [pair] if pair else [])
    mate = kernels.greedy_matching(
        complex.dims, complex.filtrations,
        complex.bd_indptr, complex.bd_indices, complex.cbd_indptr, complex.cbd_indices,
        policy.mode == FILTRATION_COMPATIBLE,
    )
    return _matching_from_mate(complex, mate)


def best_lower_face(faces: Iterable[int], filtration: Mapping[int, int], level: int) -> int | None:
    """Face of largest filtration strictly below ``level``; ties go to the smallest id."""
    best = None
    best_key = None
    for f in faces:
        g = filtration[f]
        if g >= level:
            continue
        k = (g, -f)
        if best_key is None or k > best_key:
            best, best_key = f, k
    return best


def _downward_pair(complex: ChainComplex, level_cap: int | None) -> tuple[int, int] | None:
    filt = dict(zip(complex.ids.tolist(), complex.filtrations.tolist()))
    candidates = sorted((c.filtration, c.id) for c in complex
                        if level_cap is None or c.filtration <= level_cap)
    for g, a in candidates:
        b = best_lower_face(complex.faces(a), filt, g)
        if b is not None:
            return a, b
    return None


# -- Morse boundary and Morse complex ----------------------------------------


def _sweep(graph: MorseGraph, critical_mask: np.ndarray, rank: np.ndarray):
    sources = np.flatnonzero(critical_mask & (graph.dims > 0)).astype(np.int64)
    ptr, idx = kernels.morse_sweeps(graph.out_ptr, graph.out_idx, graph.dims, rank,
                                    critical_mask, sources)
    return sources, ptr, idx


def morse_boundary(graph: MorseGraph, critical: Iterable[int]) -> dict[int, Chain]:
    """Morse boundary of every critical cell, by mod-2 path counting.

    One topological sort is shared by all sources; each source is then
    swept in topological order, visiting only vertices it reaches.  Raises
    ``ContractError`` if the graph has a cycle.
    """
    rank = graph.topological_rank()
    if rank is None:
        raise ContractError("Morse graph has a directed cycle; the matching is not acyclic")
    critical = set(critical)
    mask = np.array([v in critical for v in graph.ids.tolist()], dtype=bool)
    sources, ptr, idx = _sweep(graph, mask, rank)
    ids = graph.ids
    dims = graph.dims.tolist()
    result = {v: Chain(dims[graph._pos[v]] - 1) for v in critical}
    for t, s in enumerate(sources.tolist()):
        result[int(ids[s])] = Chain(dims[s] - 1, frozenset(ids[idx[ptr[t]:ptr[t + 1]]].tolist()))
    return result


def morse_complex(complex: ChainComplex, matching: Matching) -> ChainComplex:
    """The chain complex on the critical cells of ``matching`` with its Morse boundary.

    Critical cells keep their ids, dimensions and filtration values.
    """
    mate = _mate_array(complex, matching)
    return _morse_complex_from_mate(complex, mate)


def _morse_complex_from_mate(complex: ChainComplex, mate: np.ndarray) -> ChainComplex:
    ptr, idx = kernels.morse_graph(complex.dims, complex.bd_indptr, complex.bd_indices, mate)
    graph = MorseGraph(complex.ids, complex.dims, ptr, idx)
    rank = graph.topological_rank()
    if rank is None:
        raise ContractError("Morse graph has a directed cycle; the matching is not acyclic")
    crit = mate < 0
    sources, bptr, bidx = _sweep(graph, crit, rank)
    keep = np.flatnonzero(crit)
    remap = np.full(len(complex), -1, dtype=np.int64)
    remap[keep] = np.arange(len(keep), dtype=np.int64)
    # sources are the kept cells of positive dimension, in position order
    lengths = np.zeros(len(keep), dtype=np.int64)
    lengths[remap[sources]] = np.diff(bptr)
    new_ptr = np.zeros(len(keep) + 1, dtype=np.int64)
    np.cumsum(lengths, out=new_ptr[1:])
    return ChainComplex._from_arrays(
        complex.ids[keep], complex.dims[keep], complex.filtrations[keep], new_ptr, remap[bidx],
    )


def build_morse_complex(complex: ChainComplex,
                        policy: MatchingPolicy = MatchingPolicy()) -> tuple[ChainComplex, Matching]:
    """Match under ``policy`` and return the Morse complex together with the matching."""
    if policy.mode == DOWNWARD_MAX_FACE:
        matching = compute_matching(complex, policy)
        return morse_complex(complex, matching), matching
    mate = kernels.greedy_matching(
        complex.dims, complex.filtrations,
        complex.bd_indptr, complex.bd_indices, complex.cbd_indptr, complex.cbd_indices,
        policy.mode == FILTRATION_COMPATIBLE,
    )
    return _morse_complex_from_mate(complex, mate), _matching_from_mate(complex, mate)


class WorkingComplex:
    """Mutable boundary/coboundary sets for pair-by-pair Morse reduction.

    :meth:`contract` applies the Morse complex of a single matched pair in
    place.  With one pair ``(A, b)`` the only V-paths through matched cells
    are ``X -> b -> A -> f``, so every other coface of ``b`` trades ``b`` for
    the rest of ``A``'s boundary (a Z2 sum) and the cofaces of ``A`` just
    lose ``A``.
    """

    def __init__(self, complex: ChainComplex):
        self.dim = dict(zip(complex.ids.tolist(), complex.dims.tolist()))
        self.filtration = dict(zip(complex.ids.tolist(), complex.filtrations.tolist()))
        bmap = complex.boundary_map()
        self.boundary: dict[int, set[int]] = {c: set(f) for c, f in bmap.items()}
        self.coboundary: dict[int, set[int]] = {c: set() for c in bmap}
        for c, faces in bmap.items():
            for f in faces:
                self.coboundary[f].add(c)

    def __len__(self) -> int:
        return len(self.boundary)

    def __contains__(self, cell_id) -> bool:
        return cell_id in self.boundary

    def contract(self, coface: int, face: int) -> None:
        a, b = coface, face
        if b not in self.boundary.get(a, ()):
            raise ContractError(f"cell {b} is not a face of {a}")
        rest = self.boundary[a] - {b}
        for x in self.coboundary[b] - {a}:
            bx = self.boundary[x]
            bx.discard(b)
            for f in rest:
                if f in bx:
                    bx.remove(f)
                    self.coboundary[f].discard(x)
                else:
                    bx.add(f)
                    self.coboundary[f].add(x)
        for x in self.coboundary[a]:
            self.boundary[x].discard(a)
        for c in (a, b):
            for f in self.boundary[c]:
                self.coboundary[f].discard(c)
            del self.boundary[c]
            del self.coboundary[c]
            del self.dim[c]
            del self.filtration[c]

    def to_complex(self) -> ChainComplex:
        from .complex import Cell
        return ChainComplex((Cell(c, self.dim[c], self.filtration[c]) for c in self.boundary),
                            self.boundary)


def contract_pair(complex: ChainComplex, coface: int, face: int) -> ChainComplex:
    """Morse complex of the one-pair matching ``(coface, face)``, by direct boundary update."""
    work = WorkingComplex(complex)
    work.contract(coface, face)
    return work.to_complex()
