from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyperfect.exactmath import (
    format_fraction,
    nullspace,
    primitive_normalize,
    rank,
    solve_affine_span,
    to_fraction,
)

fractions = st.fractions(max_denominator=10**6).filter(lambda q: abs(q) < 10**12)


def test_rank_examples():
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank([[0, 0], [0, 0]]) == 0
    # row 3 = row 1 + row 2
    assert rank([[1, 1, 0], [0, 1, 1], [1, 2, 1]]) == 2
    assert rank([[Fraction(1, 2), Fraction(1, 3)], [3, 2]]) == 1


def test_affine_span_examples():
    assert solve_affine_span([(3, 4)])[0] == 0
    cube = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    assert solve_affine_span(cube)[0] == 3
    dim, basis = solve_affine_span([(0, 0), (1, 1), (2, 2)])
    assert dim == 1 and basis == [[1, 1]]


def test_primitive_normalize_examples():
    assert primitive_normalize([Fraction(1, 2), Fraction(1, 2)]) == ([1, 1], Fraction(1, 2))
    assert primitive_normalize([2, 4]) == ([1, 2], Fraction(2))
    assert primitive_normalize([Fraction(-2, 3), Fraction(1, 3), Fraction(1, 3)]) == ([-2, 1, 1], Fraction(1, 3))
    with pytest.raises(ValueError):
        primitive_normalize([0, 0])


def test_nullspace():
    ns = nullspace([[1, 1, 0], [0, 1, 1]])
    assert len(ns) == 1
    v = ns[0]
    assert v[0] - v[1] + v[2] == 3 * v[0] or v == [1, -1, 1]


def test_serialization():
    assert format_fraction(Fraction(-3, 6)) == "-1/2"
    assert format_fraction(4) == "4"
    assert to_fraction("7/21") == Fraction(1, 3)


@given(fractions, fractions)
def test_exact_arithmetic(a, b):
    assert (a + b) - b == a


@given(st.lists(fractions, min_size=1, max_size=6).filter(any))
def test_primitive_normalize_properties(v):
    w, c = primitive_normalize(v)
    assert c > 0
    assert [c * x for x in w] == v
    assert primitive_normalize(w) == (w, 1)


@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_matches_nullity(rows):
    assert rank(rows) + len(nullspace(rows)) == 4
