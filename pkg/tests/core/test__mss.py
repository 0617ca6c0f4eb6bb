"""
Unit tests for the ``seqrecover.core.mss`` module.
"""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from seqrecover.core import distances, mss, sequences
from seqrecover.core.exceptions import (
    DistanceDomainError,
    InfeasibleInstanceError,
    UnsupportedAlphabetError,
)
from seqrecover.core.mss import MssInstance

nonempty = st.lists(st.integers(0, 1), min_size=1, max_size=9).map(tuple)


@st.composite
def instances(draw: st.DrawFn) -> MssInstance:
    values = draw(st.lists(st.integers(1, 9), max_size=9))
    r = draw(st.integers(0, math.ceil(len(values) / 2)))
    return MssInstance(values=tuple(values), r=r)


@pytest.mark.parametrize(
    "values, r, expected",
    [
        ((1, 1, 2), 1, 1),
        ((3, 3, 1, 3, 3, 3), 1, 1),
        ((3, 3, 2, 3, 2, 3), 1, 2),
        ((3, 3, 2, 3, 2, 3), 0, 0),
        ((3, 1, 3, 3), 1, 1),
        ((3, 1, 3, 3), 2, 4),
        ((3, 2, 3, 2), 2, 4),
        ((5,), 1, 5),
        ((), 0, 0),
        ((4, 1, 4), 2, 8),
    ],
)
def test__mss_solve(values: tuple[int, ...], r: int, expected: int):
    """
    Test the minimum sum of ``r`` pairwise non-adjacent values.
    """

    instance = MssInstance(values=values, r=r)

    assert expected == mss.mss_solve(instance)
    assert expected == mss.mss_brute_force(instance)


def test__mss_instance__errors():
    """
    Test that malformed and infeasible instances are rejected.
    """

    with pytest.raises(ValueError):
        MssInstance(values=(1, 0), r=1)
    with pytest.raises(ValueError):
        MssInstance(values=(1,), r=-1)
    with pytest.raises(InfeasibleInstanceError):
        mss.mss_solve(MssInstance(values=(1, 2), r=2))


@given(instance=instances())
def test__mss_solve__brute_force(instance: MssInstance):
    """
    The dynamic programme agrees with enumerating every selection.
    """

    assert mss.mss_brute_force(instance) == mss.mss_solve(instance)


def test__reduce_dtw():
    """
    Test that the reduction records how many endpoints it had to peel.
    """

    parse = sequences.parse

    assert mss.DtwReduction(value=1, peeling_steps=0) == mss.reduce_dtw(
        parse("010110"), parse("010")
    )
    assert mss.DtwReduction(value=1, peeling_steps=1) == mss.reduce_dtw(
        parse("0"), parse("1")
    )


@pytest.mark.parametrize(
    "x, y, expected",
    [
        ("010110", "010", 1),
        ("010110", "011", 2),
        ("0110", "0110", 0),
    ],
)
def test__dtw_via_mss__examples(x: str, y: str, expected: int):
    """
    Test the reduction with and without peeling the endpoints.
    """

    assert expected == mss.dtw_via_mss(sequences.parse(x), sequences.parse(y))


def test__reduce_dtw__errors():
    """
    Test that the reduction only takes non-empty binary sequences.
    """

    with pytest.raises(DistanceDomainError):
        mss.dtw_via_mss((), (0,))
    with pytest.raises(UnsupportedAlphabetError):
        mss.dtw_via_mss((0, sequences.HALF), (0,))


@given(x=nonempty, y=nonempty)
def test__dtw_via_mss(x: sequences.Sequence, y: sequences.Sequence):
    """
    The MSS reduction gives the DTW distance of every binary pair.
    """

    assert distances.dtw_distance(x, y).value == mss.dtw_via_mss(x, y)
