import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from itermorse.complex import ContractError, validate
from itermorse.generators import complex_from_simplices, random_complex
from itermorse.homology import iterate_to_fixpoint
from itermorse.io import fixture_path, load_fixture, parse_simplicial_format
from itermorse.morse import (DOWNWARD_MAX_FACE, FILTRATION_COMPATIBLE, UNCONSTRAINED, Matching,
                             MatchingPolicy, MorseGraph, assert_acyclic, build_morse_graph,
                             compute_matching, contract_pair, morse_boundary, morse_complex)
from itermorse.oracle import betti_rank_oracle

# cells of the three-triangle fixture
U, V, W, X = 0, 1, 2, 3
UV, UW, UX, VW, VX, WX = 4, 5, 6, 7, 8, 9
UVW, UVX, VWX = 10, 11, 12

DUNCE_OPTIMAL = [
    ((3, 5), (3,)), ((4, 5), (4,)), ((2, 5), (2,)), ((5, 7), (7,)), ((1, 5), (1,)),
    ((5, 8), (8,)), ((5, 6), (6,)), ((3, 6, 7), (3, 6)), ((1, 2, 7), (2, 7)),
    ((2, 3, 7), (3, 7)), ((3, 4, 5), (3, 4)), ((2, 3, 8), (2, 8)), ((4, 5, 8), (4, 8)),
    ((5, 6, 7), (6, 7)), ((1, 2, 5), (1, 2)), ((1, 2, 6), (2, 6)), ((1, 3, 8), (3, 8)),
    ((1, 3, 4), (1, 3)), ((1, 5, 7), (1, 7)), ((1, 3, 6), (1, 6)), ((1, 4, 8), (1, 8)),
    ((2, 3, 5), (2, 3)), ((5, 6, 8), (6, 8)),
]


def dunce_ids():
    labels = {}
    for line in fixture_path("dunce.smp").read_text().splitlines():
        if line.strip() and not line.startswith("#"):
            labels[tuple(int(v) for v in line.split(":")[1].split())] = len(labels)
    return labels


def test_policy_rejects_unknown_mode_and_stray_cap():
    with pytest.raises(ValueError):
        MatchingPolicy("greedy")
    with pytest.raises(ValueError):
        MatchingPolicy(FILTRATION_COMPATIBLE, level_cap=3)
    MatchingPolicy(DOWNWARD_MAX_FACE, level_cap=3)


def test_matching_rejects_non_incident_and_reused_cells():
    k = load_fixture("double_path.bnd")
    with pytest.raises(ContractError):
        build_morse_graph(k, Matching.from_pairs(k, [(UVW, VX)]))
    with pytest.raises(ContractError):
        Matching.from_pairs(k, [(UVW, UV), (UVX, UV)])
    with pytest.raises(ContractError):
        build_morse_graph(k, Matching.from_pairs(k, [(UVW, UV), (UVW, UW)]))


def test_two_cycle_on_parallel_edges_is_detected():
    k = load_fixture("circle2.bnd")
    matching = Matching.from_pairs(k, [(2, 0), (3, 1)])
    graph = build_morse_graph(k, matching)
    cycle = assert_acyclic(graph)
    assert cycle is not None and sorted(cycle) == [0, 1, 2, 3]
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        assert b in graph.successors(a)
    with pytest.raises(ContractError):
        morse_boundary(graph, matching.critical)


def test_cycle_of_vertex_edge_pairs_around_a_triangle():
    k = complex_from_simplices({s: 0 for s in ["a", "b", "c", "ab", "bc", "ac"]})
    ab, bc, ac = 3, 4, 5
    graph = build_morse_graph(k, Matching.from_pairs(k, [(ab, 1), (bc, 2), (ac, 0)]))
    assert len(assert_acyclic(graph)) == 6


def test_parallel_paths_cancel_mod_two():
    k = load_fixture("double_path.bnd")
    matching = Matching.from_pairs(k, [(UVX, UV), (VWX, VW)])
    graph = build_morse_graph(k, matching)
    assert assert_acyclic(graph) is None
    bd = morse_boundary(graph, matching.critical)
    assert set(bd[UVW]) == {UW, UX, WX}
    assert VX not in bd[UVW]
    assert validate(morse_complex(k, matching))


def test_morse_graph_edges_reverse_matched_pairs():
    k = load_fixture("double_path.bnd")
    graph = build_morse_graph(k, Matching.from_pairs(k, [(UVX, UV)]))
    edges = set(graph.edges())
    assert (UV, UVX) in edges and (UVX, UV) not in edges
    assert (UVW, UV) in edges
    assert graph.num_edges == k.num_incidences()


def test_from_edges_and_topological_rank():
    g = MorseGraph.from_edges({0: 0, 1: 1, 2: 2}, [(2, 1), (1, 0)])
    rank = g.topological_rank()
    assert rank is not None and rank[2] < rank[1] < rank[0]
    cyclic = MorseGraph.from_edges({0: 0, 1: 1}, [(0, 1), (1, 0)])
    assert cyclic.topological_rank() is None


def test_dunce_hat_optimal_matching_leaves_three_critical_cells():
    ids = dunce_ids()
    k = load_fixture("dunce.smp")
    matching = Matching.from_pairs(k, [(ids[a], ids[b]) for a, b in DUNCE_OPTIMAL])
    assert assert_acyclic(build_morse_graph(k, matching)) is None
    assert sorted(k.cell(c).dim for c in matching.critical) == [0, 1, 2]
    m = morse_complex(k, matching)
    assert validate(m)
    (t,) = [c.id for c in m if c.dim == 2]
    (e,) = [c.id for c in m if c.dim == 1]
    assert m.faces(t) == (e,)
    assert m.faces(e) == ()
    fixpoint, trace = iterate_to_fixpoint(m)
    assert [c.dim for c in fixpoint] == [0]
    assert trace.sizes == [3, 1, 1]


def test_dunce_hat_has_no_collapse_to_a_point():
    # no free face: every edge lies in two or three triangles
    k = load_fixture("dunce.smp")
    assert min(len(k.cofaces(c.id)) for c in k if c.dim == 1) >= 2


def test_compatible_matching_only_pairs_equal_values():
    k = load_fixture("two_loops.bnd")
    m = compute_matching(k, MatchingPolicy(FILTRATION_COMPATIBLE))
    assert m.pairs
    for b, a in m.pairs.items():
        assert k.cell(a).filtration == k.cell(b).filtration


def test_compatible_matching_on_strict_faces_is_empty():
    k = load_fixture("circle2.bnd")
    assert not compute_matching(k, MatchingPolicy(FILTRATION_COMPATIBLE)).pairs


def test_downward_matching_takes_lowest_coface_and_its_highest_face():
    k = load_fixture("square.bnd")
    m = compute_matching(k, MatchingPolicy(DOWNWARD_MAX_FACE))
    # ac and bd both enter at 1; ac has the smaller id, tie between a and c goes to a
    assert m.pairs == {0: 5}
    assert not compute_matching(k, MatchingPolicy(DOWNWARD_MAX_FACE, level_cap=0)).pairs


def test_single_pair_on_two_edge_circle():
    k = load_fixture("circle2.bnd")
    m = compute_matching(k, MatchingPolicy(DOWNWARD_MAX_FACE))
    assert m.pairs == {0: 2}
    reduced = morse_complex(k, m)
    assert [c.id for c in reduced] == [1, 3]
    assert reduced.faces(3) == ()
    assert reduced == contract_pair(k, 2, 0)


def single_pair_formula(k, a, b):
    rest = set(k.faces(a)) - {b}
    out = {}
    for c in k:
        if c.id in (a, b):
            continue
        faces = set(k.faces(c.id)) - {a}
        if b in faces:
            faces = (faces - {b}) ^ rest
        out[c.id] = faces
    return out


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_single_pair_formula_on_random_complexes(seed):
    k = random_complex(np.random.default_rng(seed), max_cells=30)
    for a in k:
        for b in k.faces(a.id):
            reduced = morse_complex(k, Matching.from_pairs(k, [(a.id, b)]))
            expected = single_pair_formula(k, a.id, b)
            assert {c: set(f) for c, f in reduced.boundary_map().items()} == expected
            assert reduced == contract_pair(k, a.id, b)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([UNCONSTRAINED, FILTRATION_COMPATIBLE]))
def test_greedy_matchings_are_acyclic_and_preserve_homology(seed, mode):
    k = random_complex(np.random.default_rng(seed))
    policy = MatchingPolicy(mode)
    m = compute_matching(k, policy)
    assert assert_acyclic(build_morse_graph(k, m)) is None
    reduced = morse_complex(k, m)
    assert validate(reduced)
    betti = betti_rank_oracle(reduced)
    assert betti + [0] * (len(betti_rank_oracle(k)) - len(betti)) == betti_rank_oracle(k)
    if any(k.cell(f).filtration == c.filtration or mode == UNCONSTRAINED
           for c in k for f in k.faces(c.id)):
        assert m.pairs


def test_hollow_tetrahedron_keeps_its_two_sphere():
    simplices = {s: 0 for s in itertools.chain.from_iterable(
        itertools.combinations("abcd", r) for r in (1, 2, 3))}
    k = complex_from_simplices(simplices)
    fixpoint, _ = iterate_to_fixpoint(k)
    assert sorted(c.dim for c in fixpoint) == [0, 2]


def test_simplicial_parse_matches_builder():
    text = "0 : a\n0 : b\n1 : a b\n"
    assert parse_simplicial_format(text) == complex_from_simplices({"a": 0, "b": 0, "ab": 1})
