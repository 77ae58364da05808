"""Builders and random generators for filtered complexes."""

from __future__ import annotations

import itertools
from typing import Hashable, Mapping, Sequence

import numpy as np

from .complex import Cell, ChainComplex
from .morse import FILTRATION_COMPATIBLE, MatchingPolicy, build_morse_complex


def complex_from_simplices(filtration: Mapping[Sequence[Hashable], int]) -> ChainComplex:
    """Chain complex of a filtered simplicial complex.

    ``filtration`` maps each simplex, given by its vertex labels, to its
    value.  Ids follow the mapping's iteration order.  A missing face
    raises ``KeyError``.
    """
    ids: dict[frozenset, int] = {}
    cells = []
    for simplex, value in filtration.items():
        key = frozenset(simplex)
        if len(key) != len(simplex) or not key:
            raise ValueError(f"malformed simplex {tuple(simplex)!r}")
        if key in ids:
            raise ValueError(f"simplex {tuple(simplex)!r} listed twice")
        ids[key] = len(ids)
        cells.append(Cell(ids[key], len(key) - 1, int(value)))
    boundary = {}
    for key, i in ids.items():
        if len(key) > 1:
            faces = []
            for f in itertools.combinations(sorted(key, key=repr), len(key) - 1):
                fk = frozenset(f)
                if fk not in ids:
                    raise KeyError(f"face {tuple(f)!r} of simplex {tuple(sorted(key, key=repr))!r} is not listed")
                faces.append(ids[fk])
            boundary[i] = faces
    return ChainComplex(cells, boundary)


def closure(simplices) -> set[tuple]:
    out = set()
    for s in simplices:
        s = tuple(sorted(s))
        for k in range(1, len(s) + 1):
            out.update(itertools.combinations(s, k))
    return out


def monotone_filtration(rng: np.random.Generator, simplices, max_vertex_value: int = 3,
                        max_step: int = 2, p_equal: float = 0.5) -> dict[tuple, int]:
    """Random integer filtration, faces never above cofaces; ties are frequent."""
    values: dict[tuple, int] = {}
    for s in sorted(simplices, key=lambda s: (len(s), s)):
        if len(s) == 1:
            values[s] = int(rng.integers(0, max_vertex_value + 1))
        else:
            base = max(values[f] for f in itertools.combinations(s, len(s) - 1))
            step = 0 if rng.random() < p_equal else int(rng.integers(1, max_step + 1))
            values[s] = base + step
    return values


def random_simplicial_complex(rng: np.random.Generator, max_cells: int = 60,
                              max_dim: int = 3) -> ChainComplex:
    """Random face-closed simplicial complex with at most ``max_cells`` cells."""
    n_vertices = int(rng.integers(1, 9))
    verts = list(range(n_vertices))
    simplices = {(v,) for v in verts}
    for _ in range(int(rng.integers(0, 12))):
        k = int(rng.integers(2, min(max_dim + 1, n_vertices) + 2)) if n_vertices > 1 else 1
        k = min(k, n_vertices, max_dim + 1)
        candidate = closure([tuple(rng.choice(verts, size=k, replace=False).tolist())])
        if len(simplices | candidate) <= max_cells:
            simplices |= candidate
    return complex_from_simplices(monotone_filtration(rng, simplices))


def random_cellular_complex(rng: np.random.Generator, max_cells: int = 60,
                            max_dim: int = 3) -> ChainComplex:
    """Random non-simplicial complex.

    Takes a filtration-compatible Morse complex of a random simplicial
    complex (cells may then share faces, have parallel boundaries or an
    empty boundary) and draws a fresh monotone filtration on it.
    """
    base = random_simplicial_complex(rng, max_cells, max_dim)
    morse, _ = build_morse_complex(base, MatchingPolicy(FILTRATION_COMPATIBLE))
    values: dict[int, int] = {}
    cells = []
    for c in sorted(morse, key=lambda c: (c.dim, c.id)):
        faces = morse.faces(c.id)
        lo = max((values[f] for f in faces), default=int(rng.integers(0, 3)))
        values[c.id] = lo + (0 if rng.random() < 0.5 else int(rng.integers(1, 3)))
        cells.append(Cell(c.id, c.dim, values[c.id]))
    return ChainComplex(cells, morse.boundary_map())


def random_complex(rng: np.random.Generator, max_cells: int = 60, max_dim: int = 3) -> ChainComplex:
    """A random simplicial or cellular complex, three to one."""
    if rng.random() < 0.25:
        return random_cellular_complex(rng, max_cells, max_dim)
    return random_simplicial_complex(rng, max_cells, max_dim)


def flag_filtration(points: np.ndarray, radius: float, max_dim: int = 3,
                    scale: float = 100.0) -> dict[tuple, int]:
    """Vietoris-Rips filtration of a point cloud with integer values.

    Edge values are pairwise distances times ``scale``, rounded up; only
    edges up to ``radius`` are kept.  Higher simplices are the cliques of
    the edge graph, valued at their longest edge.  Vertices enter at 0.
    """
    points = np.asarray(points, dtype=float)
    n = len(points)
    dist = np.sqrt(((points[:, None, :] - points[None, :, :]) ** 2).sum(-1))
    values: dict[tuple, int] = {(i,): 0 for i in range(n)}
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for i, j in zip(*np.nonzero(np.triu(dist <= radius, 1))):
        i, j = int(i), int(j)
        values[(i, j)] = int(np.ceil(dist[i, j] * scale))
        nbrs[i].add(j)

    def extend(simplex, common):
        if len(simplex) > max_dim:
            return
        for v in sorted(common):
            s = simplex + (v,)
            values[s] = max(values[s[:-1]], *(values[(u, v)] for u in simplex))
            extend(s, common & nbrs[v])

    for i in range(n):
        for j in sorted(nbrs[i]):
            extend((i, j), nbrs[i] & nbrs[j])
    return values


def random_flag_complex(rng: np.random.Generator, n_points: int, radius: float,
                        max_dim: int = 3, ambient_dim: int = 3) -> ChainComplex:
    points = rng.random((n_points, ambient_dim))
    return complex_from_simplices(flag_filtration(points, radius, max_dim))
