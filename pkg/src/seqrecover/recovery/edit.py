"""
Recovering a hidden binary input from edit distance queries.

The adaptive strategies lean on one fact: a query ``q`` no longer than the
hidden input ``s`` is a subsequence of ``s`` exactly when
``d(s, q) = len(s) - len(q)``. Each such query is therefore a membership
test, and the hidden input is rebuilt run by run.

The non-adaptive strategies fix their whole plan up front, either with a
wildcard symbol that matches nothing or with binary queries only.
"""

from __future__ import annotations

import dataclasses
import enum
import logging
from collections.abc import Callable
from typing import ClassVar

import cachetools

from seqrecover import utils
from seqrecover.core import sequences
from seqrecover.core.distances import DistanceKind, Number, edit_distance
from seqrecover.core.exceptions import (
    AdversarialOracleError,
    TheoremViolationError,
)
from seqrecover.core.oracle import Session
from seqrecover.core.sequences import EMPTY, WILDCARD, Sequence
from seqrecover.core.strategies import NonAdaptiveStrategy, Strategy

logger = logging.getLogger("recovery")


class EditPlanVariant(enum.StrEnum):
    WILDCARD_NON_ADAPTIVE = "wildcard-non-adaptive"
    BINARY_NON_ADAPTIVE = "binary-non-adaptive"


class Expansion(enum.StrEnum):
    """
    How the adaptive runs strategy searches for each run length.
    """

    DOUBLING = "doubling"
    LINEAR = "linear"


@dataclasses.dataclass(frozen=True)
class EditQueryPlan:
    variant: EditPlanVariant
    queries: tuple[Sequence, ...]


def unit_query(length: int, i: int) -> Sequence:
    """
    The sequence ``0^(i-1) 1 0^(length-i)``.
    """

    return (0,) * (i - 1) + (1,) + (0,) * (length - i)


def _runs_query(chars: Sequence, lengths: list[int]) -> Sequence:
    return tuple(
        char for char, length in zip(chars, lengths, strict=True)
        for _ in range(length)
    )


def runs_bound(n: int, run_count: int) -> int:
    """
    ``2k⌈log₂(n/k)⌉ + k + ⌈log₂ n⌉ + 3`` for an input with ``k`` runs.
    """

    if run_count == 0:
        return utils.ceil_log2(n) + 3
    return (
        2 * run_count * utils.ceil_log2(n, run_count)
        + run_count
        + utils.ceil_log2(n)
        + 3
    )


def linear_runs_bound(n: int) -> int:
    return n + utils.ceil_log2(n) + 3


class _SubsequenceProbe:
    """
    Membership tests against a hidden input of known length.
    """

    def __init__(self, session: Session, length: int) -> None:
        self.session = session
        self.length = length

    def contains(self, q: Sequence) -> bool:
        if len(q) > self.length:
            return False

        answer = self.session.query(q)
        gap = self.length - len(q)
        if answer < gap:
            raise AdversarialOracleError(
                f"d(s, q) = {answer} is below the length gap {gap}"
            )
        return answer == gap


def _doubling_search(fits: Callable[[int], bool], ceiling: int) -> int:
    """
    The largest ``c`` in ``[1, ceiling]`` with ``fits(c)``, for a monotone
    ``fits`` that holds at 1: double until failure, then bisect.
    """

    low, step = 1, 2
    while step <= ceiling and fits(step):
        low, step = step, step * 2

    high = min(step, ceiling + 1)
    while high - low > 1:
        middle = (low + high) // 2
        if fits(middle):
            low = middle
        else:
            high = middle

    return low


def _linear_search(fits: Callable[[int], bool], ceiling: int) -> int:
    value = 1
    while value < ceiling and fits(value + 1):
        value += 1
    return value


def adaptive_runs_recover(
    session: Session,
    expansion: Expansion = Expansion.DOUBLING,
) -> Sequence:
    """
    Recover the hidden input run by run.

    1. Query φ for the length ``ℓ``.
    2. Bisect for the longest alternating subsequence starting with 0,
       then test whether a 1 can be put in front of it. The winner is the
       condensed expression of the hidden input.
    3. Grow each run but the last with a line search; the last run takes
       whatever length is left.
    """

    length = session.query(EMPTY)
    if length == 0:
        return EMPTY
    if length > session.n:
        raise AdversarialOracleError(f"Length {length} exceeds n={session.n}")

    probe = _SubsequenceProbe(session, length)

    low, high = 0, length
    while low < high:
        middle = (low + high + 1) // 2
        if probe.contains(sequences.alternating(middle, 0)):
            low = middle
        else:
            high = middle - 1

    if probe.contains((1, *sequences.alternating(low, 0))):
        chars = sequences.alternating(low + 1, 1)
    else:
        chars = sequences.alternating(low, 0)
    if not chars:
        raise AdversarialOracleError("A non-empty input has no runs")

    run_count = len(chars)
    logger.debug(f"Hidden input condenses to {sequences.format_sequence(chars)}")

    search = _doubling_search if expansion is Expansion.DOUBLING else _linear_search
    lengths = [1] * run_count
    for index in range(run_count - 1):

        def fits(candidate: int, index: int = index) -> bool:
            trial = [*lengths[:index], candidate, *lengths[index + 1 :]]
            return probe.contains(_runs_query(chars, trial))

        ceiling = length - sum(lengths[:index]) - (run_count - index - 1)
        lengths[index] = search(fits, ceiling)

    lengths[-1] = length - sum(lengths[:-1])
    if lengths[-1] < 1:
        raise AdversarialOracleError("The run lengths exceed the input length")

    return _runs_query(chars, lengths)


def adaptive_unit_recover(session: Session) -> Sequence:
    """
    Recover the hidden input one position at a time: bit ``i`` is 1 exactly
    when moving the single 1 of a unit query onto position ``i`` lowers the
    distance from the all-0 query by one.
    """

    length = session.query(EMPTY)
    if length == 0:
        return EMPTY
    if length > session.n:
        raise AdversarialOracleError(f"Length {length} exceeds n={session.n}")

    zeros = session.query((0,) * length)
    bits = []
    for i in range(1, length + 1):
        difference = zeros - session.query(unit_query(length, i))
        if difference == 1:
            bits.append(1)
        elif difference <= 0:
            bits.append(0)
        else:
            raise AdversarialOracleError(
                f"Unit query {i} lowers the distance by {difference}"
            )

    return tuple(bits)


@cachetools.cached(cache=cachetools.LRUCache(maxsize=64))
def wildcard_plan(n: int) -> EditQueryPlan:
    """
    φ followed by ``1^j W^(n-j)`` for ``j = 1..n``.
    """

    return EditQueryPlan(
        variant=EditPlanVariant.WILDCARD_NON_ADAPTIVE,
        queries=(
            EMPTY,
            *((1,) * j + (WILDCARD,) * (n - j) for j in range(1, n + 1)),
        ),
    )


def wildcard_decode(n: int, answers: list[Number]) -> Sequence:
    """
    Decode the wildcard plan.

    The answer to ``1^j W^(n-j)`` is ``n`` minus the number of 1s among the
    first ``j`` hidden characters, so consecutive answers differ by the
    hidden bits.
    """

    if len(answers) != n + 1:
        raise ValueError(f"Expected {n + 1} answers, got {len(answers)}")

    length = answers[0]
    if not 0 <= length <= n:
        raise AdversarialOracleError(f"Length {length} is out of range")

    bits, previous_ones = [], 0
    for j in range(1, length + 1):
        ones = n - answers[j]
        bit = ones - previous_ones
        if bit not in {0, 1}:
            raise AdversarialOracleError(
                f"The 1-count moves by {bit} at position {j}"
            )
        bits.append(int(bit))
        previous_ones = ones

    return tuple(bits)


@cachetools.cached(cache=cachetools.LRUCache(maxsize=64))
def binary_nonadaptive_plan(n: int) -> EditQueryPlan:
    """
    For every length ``ℓ`` in ``1..n``, the all-0 query and the ``ℓ`` unit
    queries of that length.
    """

    return EditQueryPlan(
        variant=EditPlanVariant.BINARY_NON_ADAPTIVE,
        queries=tuple(
            q
            for length in range(1, n + 1)
            for q in (
                (0,) * length,
                *(unit_query(length, i) for i in range(1, length + 1)),
            )
        ),
    )


def _family_candidate(family: list[Number]) -> Sequence | None:
    zeros, *units = family
    bits = []
    for answer in units:
        difference = zeros - answer
        if difference == 1:
            bits.append(1)
        elif difference <= 0:
            bits.append(0)
        else:
            return None
    return tuple(bits)


def binary_nonadaptive_decode(n: int, answers: list[Number]) -> Sequence:
    """
    Decode the binary plan by re-simulation.

    Each length's sub-family proposes one candidate; the candidates whose
    full answer vector matches the observed one survive. The empty input is
    the case where no candidate survives and every answer equals the query
    length.
    """

    plan = binary_nonadaptive_plan(n).queries
    if len(answers) != len(plan):
        raise ValueError(f"Expected {len(plan)} answers, got {len(answers)}")

    survivors = []
    offset = 0
    for length in range(1, n + 1):
        candidate = _family_candidate(answers[offset : offset + length + 1])
        offset += length + 1
        if candidate is not None and all(
            edit_distance(candidate, q) == answer
            for q, answer in zip(plan, answers, strict=True)
        ):
            survivors.append(candidate)

    if len(survivors) > 1:
        raise TheoremViolationError(
            f"Several inputs fit the answers: {survivors}"
        )
    if survivors:
        return survivors[0]
    if all(answer == len(q) for q, answer in zip(plan, answers, strict=True)):
        return EMPTY

    raise AdversarialOracleError("No input is consistent with the answers")


class EditAdaptiveRuns(Strategy):
    strategy_id = "edit.adaptive.runs"
    distance_kind = DistanceKind.EDIT
    bound_formula = "2k⌈log₂(n/k)⌉ + k + ⌈log₂ n⌉ + 3"
    expansion: ClassVar[Expansion] = Expansion.DOUBLING

    def bound(self, n: int, hidden: Sequence) -> int:
        return runs_bound(n, sequences.run_count(hidden))

    def recover(self, session: Session) -> Sequence:
        return adaptive_runs_recover(session, self.expansion)


class EditAdaptiveRunsLinear(EditAdaptiveRuns):
    strategy_id = "edit.adaptive.runs.linear"
    bound_formula = "n + ⌈log₂ n⌉ + 3"
    expansion = Expansion.LINEAR

    def bound(self, n: int, hidden: Sequence) -> int:
        return linear_runs_bound(n)


class EditAdaptiveUnit(Strategy):
    strategy_id = "edit.adaptive.unit"
    distance_kind = DistanceKind.EDIT
    bound_formula = "n + 2"

    def bound(self, n: int, hidden: Sequence) -> int:
        return n + 2

    def recover(self, session: Session) -> Sequence:
        return adaptive_unit_recover(session)


class EditWildcard(NonAdaptiveStrategy):
    strategy_id = "edit.nonadaptive.wildcard"
    distance_kind = DistanceKind.EDIT
    extra_characters = 1
    bound_formula = "n + 1"

    def plan(self, n: int) -> list[Sequence]:
        return list(wildcard_plan(n).queries)

    def decode(self, n: int, answers: list[Number]) -> Sequence:
        return wildcard_decode(n, answers)


class EditBinary(NonAdaptiveStrategy):
    strategy_id = "edit.nonadaptive.binary"
    distance_kind = DistanceKind.EDIT
    bound_formula = "(n² + 3n) / 2"

    def plan(self, n: int) -> list[Sequence]:
        return list(binary_nonadaptive_plan(n).queries)

    def decode(self, n: int, answers: list[Number]) -> Sequence:
        return binary_nonadaptive_decode(n, answers)
