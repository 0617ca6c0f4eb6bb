"""
The min 1-separated sum (MSS) problem and binary DTW through it.

For binary sequences with the same first and the same last character, the
DTW distance is the MSS of the inner run lengths of the sequence with more
runs, picking half the difference in run counts::

    >>> dtw_via_mss(sequences.parse("010110"), sequences.parse("010"))
    1

Otherwise the first or last run is peeled off one side at a time until the
endpoints agree. The peeling recursion is memoised on run-index windows, so
no sequence is ever copied.
"""

from __future__ import annotations

import dataclasses
import itertools
import math

from seqrecover.core import sequences
from seqrecover.core.exceptions import (
    DistanceDomainError,
    InfeasibleInstanceError,
    UnsupportedAlphabetError,
)
from seqrecover.core.sequences import Sequence


@dataclasses.dataclass(frozen=True)
class MssInstance:
    """
    A list of positive integers and the number ``r`` of pairwise
    non-adjacent entries to pick.
    """

    values: tuple[int, ...]
    r: int

    def __post_init__(self) -> None:
        if any(value < 1 for value in self.values):
            raise ValueError("MSS values must be positive integers")
        if self.r < 0:
            raise ValueError("MSS selection count cannot be negative")

    @property
    def feasible(self) -> bool:
        return self.r <= math.ceil(len(self.values) / 2)


def _check_feasible(instance: MssInstance) -> None:
    if not instance.feasible:
        raise InfeasibleInstanceError(
            f"Cannot pick {instance.r} non-adjacent values out of"
            f" {len(instance.values)}"
        )


def mss_solve(instance: MssInstance) -> int:
    """
    Solve the instance by dynamic programming over (prefix, picks).
    """

    _check_feasible(instance)

    # Best sums over the prefixes ending two and one values back
    before_last = last = [0] + [math.inf] * instance.r
    for value in instance.values:
        current = [0] + [
            min(last[k], before_last[k - 1] + value)
            for k in range(1, instance.r + 1)
        ]
        before_last, last = last, current

    return int(last[instance.r])


def mss_brute_force(instance: MssInstance) -> int:
    """
    Solve the instance by enumerating every 1-separated selection.
    """

    _check_feasible(instance)
    return min(
        sum(instance.values[i] for i in picks)
        for picks in itertools.combinations(
            range(len(instance.values)), instance.r
        )
        if all(right - left > 1 for left, right in itertools.pairwise(picks))
    )


@dataclasses.dataclass(frozen=True)
class DtwReduction:
    """
    The DTW distance found through MSS, and how many endpoint-peeling steps
    it took to get there.
    """

    value: int
    peeling_steps: int


@dataclasses.dataclass(frozen=True)
class _Runs:
    chars: tuple[int, ...]
    lengths: tuple[int, ...]


def _runs_of(s: Sequence) -> _Runs:
    if not s:
        raise DistanceDomainError("Warping is undefined for an empty sequence")
    if not sequences.is_binary(s):
        raise UnsupportedAlphabetError("The MSS reduction needs binary input")

    decomposition = sequences.decompose_runs(s)
    return _Runs(decomposition.run_chars, decomposition.run_lengths)


def reduce_dtw(x: Sequence, y: Sequence) -> DtwReduction:
    """
    Compute the DTW distance between two non-empty binary sequences through
    the MSS reduction.

    Windows are inclusive ``(lo, hi)`` run indexes. The side with more runs
    is always passed first.
    """

    x_runs, y_runs = _runs_of(x), _runs_of(y)
    memo: dict[tuple[bool, int, int, int, int], int] = {}
    steps = 0

    def solve(a: _Runs, a_lo: int, a_hi: int, b: _Runs, b_lo: int, b_hi: int) -> int:
        nonlocal steps
        if a_hi - a_lo < b_hi - b_lo:
            return solve(b, b_lo, b_hi, a, a_lo, a_hi)

        key = (a is x_runs, a_lo, a_hi, b_lo, b_hi)
        if key in memo:
            return memo[key]

        a_count, b_count = a_hi - a_lo + 1, b_hi - b_lo + 1
        if a.chars[a_lo] != b.chars[b_lo]:
            steps += 1
            a_first, b_first = a.lengths[a_lo], b.lengths[b_lo]
            if a_count == 1:
                value = max(a_first, b_first)
            elif b_count == 1:
                value = a_first + solve(a, a_lo + 1, a_hi, b, b_lo, b_hi)
            else:
                value = min(
                    a_first + solve(a, a_lo + 1, a_hi, b, b_lo, b_hi),
                    b_first + solve(a, a_lo, a_hi, b, b_lo + 1, b_hi),
                )
        elif a.chars[a_hi] != b.chars[b_hi]:
            steps += 1
            a_last, b_last = a.lengths[a_hi], b.lengths[b_hi]
            if b_count == 1:
                value = a_last + solve(a, a_lo, a_hi - 1, b, b_lo, b_hi)
            else:
                value = min(
                    a_last + solve(a, a_lo, a_hi - 1, b, b_lo, b_hi),
                    b_last + solve(a, a_lo, a_hi, b, b_lo, b_hi - 1),
                )
        else:
            value = mss_solve(
                MssInstance(
                    values=a.lengths[a_lo + 1 : a_hi],
                    r=(a_count - b_count) // 2,
                )
            )

        memo[key] = value
        return value

    value = solve(
        x_runs, 0, len(x_runs.lengths) - 1, y_runs, 0, len(y_runs.lengths) - 1
    )

    return DtwReduction(value=value, peeling_steps=steps)


def dtw_via_mss(x: Sequence, y: Sequence) -> int:
    return reduce_dtw(x, y).value
