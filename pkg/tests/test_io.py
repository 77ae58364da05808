import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from itermorse.complex import validate
from itermorse.generators import random_complex
from itermorse.homology import betti_numbers
from itermorse.intervals import INF, PersistenceIntervals
from itermorse.io import (FormatError, betti_json, fixture_names, format_boundary,
                          format_intervals, infer_format, intervals_from_json, intervals_json,
                          load_fixture, parse_boundary_format, parse_simplicial_format)
from itermorse.persistence import persistence_pipeline


def test_single_edge():
    k = parse_boundary_format("0 0 0 :\n1 0 0 :\n2 1 0 : 0 1\n")
    assert len(k) == 3 and k.faces(2) == (0, 1)


def test_comments_and_blank_lines_are_ignored():
    k = parse_boundary_format("# header\n\n0 0 0 :   # a vertex\n\n1 0 2 :\n")
    assert [c.filtration for c in k] == [0, 2]


@pytest.mark.parametrize("text, line, fragment", [
    ("0 0 0 :\n2 1 0 : 0 1\n", 2, "undeclared face 1"),
    ("0 0 0 :\n0 0 1 :\n", 2, "duplicate id 0"),
    ("0 0 0 :\n1 0 0 :\n2 2 0 : 0 1\n", 3, "dimension"),
    ("0 0 x :\n", 1, "filtration must be an integer"),
    ("0 0 1.5 :\n", 1, "filtration must be an integer"),
    ("0 0 0\n", 1, "missing ':'"),
    ("0 0 2 :\n1 0 0 :\n2 1 1 : 0 1\n", 3, "larger filtration"),
])
def test_boundary_format_errors_name_the_line(text, line, fragment):
    with pytest.raises(FormatError) as info:
        parse_boundary_format(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")
    assert fragment in str(info.value)


def test_unchecked_parse_keeps_broken_complexes():
    text = "0 0 0 :\n1 0 0 :\n2 0 0 :\n3 1 0 : 0 1\n4 1 0 : 1 2\n5 2 0 : 3 4\n"
    with pytest.raises(FormatError):
        parse_boundary_format(text)
    assert not validate(parse_boundary_format(text, check=False))


def test_hollow_triangle_simplicial():
    k = parse_simplicial_format("0 : a\n0 : b\n0 : c\n0 : a b\n0 : b c\n0 : a c\n")
    assert betti_numbers(k) == [1, 1]


def test_dunce_fixture():
    k = load_fixture("dunce.smp")
    assert k.cell_counts() == [8, 24, 17]
    assert betti_numbers(k) == [1, 0, 0]


def test_missing_face_is_named():
    with pytest.raises(FormatError) as info:
        parse_simplicial_format("0 : a\n0 : b\n0 : c\n0 : a b\n0 : b c\n0 : a b c\n")
    assert "{a c}" in str(info.value) and info.value.line == 6


def test_simplicial_monotonicity_violation():
    with pytest.raises(FormatError) as info:
        parse_simplicial_format("0 : a\n3 : b\n1 : a b\n")
    assert "above its coface" in str(info.value) and info.value.line == 3


def test_two_loops_fixture_through_the_format():
    k = load_fixture("two_loops.bnd")
    assert validate(k)
    assert persistence_pipeline(k) == PersistenceIntervals([(0, 1, 3), (0, 1, INF), (1, 4, 6), (1, 5, 6)])


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_round_trip(seed):
    k = random_complex(np.random.default_rng(seed))
    again = parse_boundary_format(format_boundary(k))
    assert again == k
    assert again.boundary_map() == k.boundary_map()


def test_round_trip_of_every_fixture():
    for name in fixture_names():
        k = load_fixture(name)
        assert parse_boundary_format(format_boundary(k)) == k


def test_interval_text_sorted_with_inf():
    out = PersistenceIntervals([(1, 4, 6), (0, 1, INF), (0, 1, 3)])
    assert format_intervals(out) == "0 1 3\n0 1 inf\n1 4 6\n"


def test_json_documents():
    out = PersistenceIntervals([(0, 1, INF), (1, 2, 5)])
    doc = json.loads(intervals_json(out))
    assert doc == {"intervals": [{"dim": 0, "birth": 1, "death": "inf"}, {"dim": 1, "birth": 2, "death": 5}]}
    assert intervals_from_json(intervals_json(out)) == out
    assert json.loads(betti_json([1, 0, 2])) == {"betti": [1, 0, 2]}


def test_format_inference():
    assert infer_format("x/dunce.smp") == "simplicial"
    assert infer_format("loops.bnd") == "boundary"
    with pytest.raises(FormatError):
        infer_format("loops.txt")
