"""
Unit tests for the ``seqrecover.core.distances`` module.
"""

import fractions

import pytest
from hypothesis import given
from hypothesis import strategies as st

from seqrecover.core import distances, sequences
from seqrecover.core.distances import INF, DistanceKind, Matching
from seqrecover.core.exceptions import (
    DistanceDomainError,
    InvalidMatchingError,
    UnsupportedAlphabetError,
)
from seqrecover.core.sequences import HALF, WILDCARD

# Just for brevity
F = fractions.Fraction
parse = sequences.parse

binary = st.lists(st.integers(0, 1), max_size=8).map(tuple)
nonempty = st.lists(st.integers(0, 1), min_size=1, max_size=8).map(tuple)


@pytest.mark.parametrize(
    "x, y, expected",
    [
        ("0101", "", 4),
        ("", "", 0),
        ("010", "011", 1),
        ("01", "10", 2),
        ("1111", "0000", 4),
        ("0110", "0110", 0),
    ],
)
def test__edit_distance(x: str, y: str, expected: int):
    """
    Test the edit distance on small binary pairs.
    """

    assert expected == distances.edit_distance(parse(x), parse(y))


def test__edit_distance__wildcard():
    """
    Test that the wildcard matches no binary character, so against
    ``1^j W^(n-j)`` each 1 of the first ``j`` characters saves one edit.
    """

    assert 2 == distances.edit_distance((0, 1), (WILDCARD, WILDCARD))
    assert 0 == distances.edit_distance((WILDCARD,), (WILDCARD,))
    assert 2 == distances.edit_distance((1, 0), (1, WILDCARD, WILDCARD))
    assert 1 == distances.edit_distance((1, 1, 0), (1, 1, WILDCARD))
    assert 2 == distances.edit_distance((0, 1, 1), (1, 1, WILDCARD))
    assert 3 == distances.edit_distance((0, 0, 0), (1, 1, WILDCARD))


def test__edit_distance__rational():
    """
    Test that rational symbols are rejected under edit distance.
    """

    with pytest.raises(UnsupportedAlphabetError):
        distances.edit_distance((0,), (HALF,))


@pytest.mark.parametrize(
    "x, y, expected",
    [
        ("010110", "010", 1),
        ("1", "11", 0),
        ("101", "1011", 0),
        ("0", "1", 1),
        ("000", "1", 3),
        ("0110", "1001", 2),
    ],
)
def test__dtw_distance(x: str, y: str, expected: int):
    """
    Test the DTW distance on small binary pairs.
    """

    value = distances.dtw_distance(parse(x), parse(y))

    assert expected == value.value
    assert 1 == value.p


def test__dtw_distance__rational():
    """
    Test that rational symbols are priced exactly.
    """

    assert F(1, 2) == distances.dtw_distance((1,), (HALF,)).value
    assert 1 == distances.dtw_distance((0, 1), (HALF,)).value
    assert F(2, 3) == distances.dtw_distance((0, 0), (F(1, 3),)).value
    assert F(1, 15) == distances.dtw_distance((F(1, 3),), (F(2, 5),)).value


def test__dtw_distance__p():
    """
    Test that p-DTW sums the p-th powers and that p = INF takes the maximum.
    """

    assert 2 == distances.dtw_distance((0, 0), (1,), p=2).value
    assert F(1, 2) == distances.dtw_distance((0, 1), (HALF,), p=2).value
    assert 1 == distances.dtw_distance((0, 0), (1,), p=INF).value

    with pytest.raises(ValueError):
        distances.dtw_distance((0,), (1,), p=0)


def test__dtw_distance__domain():
    """
    Test that empty operands and the wildcard are rejected.
    """

    with pytest.raises(DistanceDomainError):
        distances.dtw_distance((), (1,))
    with pytest.raises(UnsupportedAlphabetError):
        distances.dtw_distance((0, WILDCARD), (1,))


@pytest.mark.parametrize(
    "x, y, expected",
    [
        ("1", "11", 0),
        ("0", "1", 1),
        ("0110", "010", 0),
        ("01", "010", 1),
    ],
)
def test__frechet_distance(x: str, y: str, expected: int):
    """
    Test the discrete Fréchet distance on small binary pairs.
    """

    assert expected == distances.frechet_distance(parse(x), parse(y))


def test__frechet_distance__rational():
    """
    Test the discrete Fréchet distance with rational symbols.
    """

    assert F(1, 2) == distances.frechet_distance((0, 1), (HALF,))
    assert F(1, 3) == distances.frechet_distance((0, 1), (F(1, 3), F(2, 3)))


def test__distance__dispatch():
    """
    Test that ``distance`` dispatches on the kind and collapses integral
    values to ``int``.
    """

    x, y = parse("0101"), parse("011")

    assert 1 == distances.distance(DistanceKind.EDIT, x, y)
    assert 1 == distances.distance(DistanceKind.DTW, x, y)
    assert 1 == distances.distance(DistanceKind.FRECHET, x, y)
    assert isinstance(distances.distance(DistanceKind.FRECHET, x, y), int)


def test__format_number():
    """
    Test that numbers are written as integers or reduced fractions.
    """

    assert "3" == distances.format_number(F(6, 2))
    assert "1/2" == distances.format_number(F(2, 4))
    assert "0" == distances.format_number(0)


def test__matching__validate():
    """
    Test that a covering, anchored and monotone matching is accepted.
    """

    Matching(edges=((1, 1), (2, 1), (3, 2))).validate(3, 2)


@pytest.mark.parametrize(
    "edges, query_length, input_length",
    [
        ((), 1, 1),
        (((2, 1), (3, 2)), 3, 2),
        (((1, 1), (2, 1)), 3, 2),
        (((1, 1), (3, 2)), 3, 2),
        (((1, 1), (1, 3), (2, 2), (3, 3)), 3, 3),
    ],
)
def test__matching__validate__errors(
    edges: tuple[tuple[int, int], ...],
    query_length: int,
    input_length: int,
):
    """
    Test that missing anchors, uncovered indexes and crossing edges are
    reported.
    """

    with pytest.raises(InvalidMatchingError):
        Matching(edges=edges).validate(query_length, input_length)


def test__matching__degrees():
    """
    Test the degrees of the query and input indexes.
    """

    matching = Matching(edges=((3, 2), (1, 1), (2, 1), (1, 1)))

    assert ((1, 1), (2, 1), (3, 2)) == matching.edges
    assert 2 == matching.input_degree(1)
    assert 1 == matching.query_degree(3)


@pytest.mark.parametrize(
    "x, y",
    [
        ("010110", "010"),
        ("0110", "1001"),
        ("1", "0000"),
    ],
)
def test__optimal_matching(x: str, y: str):
    """
    Test that the backtraced matching is valid and costs the optimum.
    """

    matching, value = distances.optimal_matching(parse(x), parse(y))
    matching.validate(len(x), len(y))

    assert value == distances.dtw_distance(parse(x), parse(y))
    assert value == distances.matching_cost(matching, parse(x), parse(y))


@given(x=binary, y=binary)
def test__edit_distance__metric(x: sequences.Sequence, y: sequences.Sequence):
    """
    The edit distance is symmetric, zero only on equal sequences and bounded
    by the longer length.
    """

    d = distances.edit_distance(x, y)

    assert d == distances.edit_distance(y, x)
    assert (d == 0) == (x == y)
    assert abs(len(x) - len(y)) <= d <= max(len(x), len(y))


@given(x=nonempty, y=nonempty)
def test__dtw_distance__symmetric(x: sequences.Sequence, y: sequences.Sequence):
    """
    DTW is symmetric, and distance 0 means equal condensed sequences.
    """

    d = distances.dtw_distance(x, y).value

    assert d == distances.dtw_distance(y, x).value
    assert (d == 0) == (sequences.condensed(x) == sequences.condensed(y))
    assert distances.frechet_distance(x, y) <= d
