import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from itermorse.generators import complex_from_simplices, random_complex
from itermorse.homology import IterationTrace, betti_numbers, iterate_to_fixpoint
from itermorse.io import load_fixture
from itermorse.morse import FILTRATION_COMPATIBLE, MatchingPolicy
from itermorse.oracle import betti_rank_oracle


def sphere(n):
    """Boundary of the n+1 simplex."""
    verts = range(n + 2)
    return complex_from_simplices({s: 0 for r in range(1, n + 2) for s in itertools.combinations(verts, r)})


@pytest.mark.parametrize("n", [1, 2, 3])
def test_spheres(n):
    assert betti_numbers(sphere(n)) == [1] + [0] * (n - 1) + [1]


def test_dunce_hat_reaches_a_single_vertex():
    fixpoint, trace = iterate_to_fixpoint(load_fixture("dunce.smp"))
    assert [c.dim for c in fixpoint] == [0]
    trace.check()


def test_two_disjoint_circles():
    k = complex_from_simplices({s: 0 for s in ["a", "b", "c", "ab", "bc", "ac", "x", "y", "z", "xy", "yz", "xz"]})
    assert betti_numbers(k) == [2, 2]


def test_betti_of_empty_complex():
    from itermorse.complex import ChainComplex
    assert betti_numbers(ChainComplex([])) == []


def test_trace_records_final_noop():
    k = load_fixture("two_loops.bnd")
    seen = []
    _, trace = iterate_to_fixpoint(k, MatchingPolicy(FILTRATION_COMPATIBLE), on_iteration=seen.append)
    assert trace.sizes == [15, 7, 7]
    assert trace.iterations == 2
    assert [len(c) for c in seen] == [15, 7]
    assert str(trace) == "iterations: 2; sizes: 15 7 7"


def test_trace_check_rejects_stalls():
    with pytest.raises(AssertionError):
        IterationTrace([10, 10, 10]).check()
    with pytest.raises(AssertionError):
        IterationTrace([10, 8]).check()
    IterationTrace([10, 8, 8]).check()
    IterationTrace([3, 3]).check()


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_betti_numbers_match_rank_oracle(seed):
    k = random_complex(np.random.default_rng(seed))
    assert betti_numbers(k) == betti_rank_oracle(k)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_fixpoint_sizes_shrink_and_betti_is_stable(seed):
    k = random_complex(np.random.default_rng(seed))
    reference = betti_rank_oracle(k)
    stages = []
    _, trace = iterate_to_fixpoint(k, on_iteration=stages.append)
    trace.check()
    for stage in stages:
        b = betti_rank_oracle(stage)
        assert b + [0] * (len(reference) - len(b)) == reference
