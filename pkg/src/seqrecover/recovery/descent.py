"""
Coordinate descent on the query space.

From a starting query, repeatedly move to the first neighbour that is
strictly closer to the hidden input, until the distance is 0. On integer
valued oracles every move gains at least 1, so the number of moves is at
most the starting distance.

- Edit: the single-character edits, ending on the hidden input itself.
- DTW: run moves plus the alternating sequences, ending on some query at
  distance 0.
- Fréchet: the alternating sequences, ending on the class representative.
"""

from __future__ import annotations

import dataclasses
import logging
from collections.abc import Callable

from seqrecover.core import sequences
from seqrecover.core.distances import DistanceKind, Number
from seqrecover.core.exceptions import BudgetExhaustedError, DescentStuckError
from seqrecover.core.oracle import RecoveryLevel, RecoveryReport, Session
from seqrecover.core.sequences import EMPTY, Sequence
from seqrecover.core.strategies import Strategy

logger = logging.getLogger("recovery")


@dataclasses.dataclass(frozen=True)
class Neighborhood:
    """
    A deterministic candidate generator for one distance kind.

    Candidates longer than ``max_length`` are dropped, as is the current
    query itself.
    """

    distance_kind: DistanceKind
    n: int
    generator: Callable[[Sequence, int], list[Sequence]]
    size_bound: int
    max_length: int

    def __call__(self, q: Sequence) -> list[Sequence]:
        candidates = []
        for candidate in self.generator(q, self.n):
            if candidate != q and len(candidate) <= self.max_length:
                candidates.append(candidate)
        return list(dict.fromkeys(candidates))


def edit_neighbors(q: Sequence, n: int) -> list[Sequence]:
    """
    Every sequence of length at most ``n`` one edit away from ``q``.
    """

    deletions = [q[:i] + q[i + 1 :] for i in range(len(q))]
    substitutions = [q[:i] + (1 - q[i],) + q[i + 1 :] for i in range(len(q))]
    insertions = (
        [q[:i] + (bit,) + q[i:] for i in range(len(q) + 1) for bit in (0, 1)]
        if len(q) < n
        else []
    )
    return list(dict.fromkeys(deletions + substitutions + insertions))


def _alternating_sequences(n: int) -> list[Sequence]:
    return [
        sequences.alternating(length, start)
        for length in range(1, n + 1)
        for start in (0, 1)
    ]


def dtw_neighbors(q: Sequence, n: int) -> list[Sequence]:
    """
    Drop the first or last run, or add a run of length ``1..n`` to either
    end, then every alternating sequence.
    """

    candidates = []
    runs = sequences.decompose_runs(q)
    if runs.run_count > 1:
        candidates.append(q[runs.run_lengths[0] :])
        candidates.append(q[: -runs.run_lengths[-1]])
    for length in range(1, n + 1):
        candidates.append((1 - q[0],) * length + q)
        candidates.append(q + (1 - q[-1],) * length)

    return candidates + _alternating_sequences(n)


def frechet_neighbors(q: Sequence, n: int) -> list[Sequence]:
    return _alternating_sequences(n)


def neighborhood_for(distance_kind: DistanceKind, n: int) -> Neighborhood:
    match DistanceKind(distance_kind):
        case DistanceKind.EDIT:
            return Neighborhood(
                distance_kind=DistanceKind.EDIT,
                n=n,
                generator=edit_neighbors,
                size_bound=3 * n + 1,
                max_length=n,
            )
        case DistanceKind.DTW:
            return Neighborhood(
                distance_kind=DistanceKind.DTW,
                n=n,
                generator=dtw_neighbors,
                size_bound=4 * n + 2,
                max_length=2 * n,
            )
        case DistanceKind.FRECHET:
            return Neighborhood(
                distance_kind=DistanceKind.FRECHET,
                n=n,
                generator=frechet_neighbors,
                size_bound=2 * n,
                max_length=n,
            )

    raise ValueError(f"No neighbourhood for distance kind {distance_kind!r}")


_LEVELS = {
    DistanceKind.EDIT: RecoveryLevel.EXACT,
    DistanceKind.DTW: RecoveryLevel.ZERO_DISTANCE,
    DistanceKind.FRECHET: RecoveryLevel.EQUIVALENCE_CLASS,
}


def descend(
    session: Session,
    neighborhood: Neighborhood,
    init: Sequence,
    budget: int,
) -> RecoveryReport:
    """
    Walk to a query at distance 0 from the hidden input.

    :param session: An adaptive session.
    :param neighborhood: The candidate generator.
    :param init: The starting query.
    :param budget: The most queries this descent may ask.

    :return: The report, whose ``recovered`` sequence is at distance 0.
    """

    start = session.query_count

    def ask(q: Sequence) -> Number:
        if session.query_count - start >= budget:
            raise BudgetExhaustedError(f"Descent used its budget of {budget} queries")
        return session.query(q)

    current, current_distance = init, ask(init)
    while current_distance > 0:
        for candidate in neighborhood(current):
            candidate_distance = ask(candidate)
            if candidate_distance < current_distance:
                logger.debug(
                    f"Moving to {sequences.format_sequence(candidate)!r}:"
                    f" {current_distance} -> {candidate_distance}"
                )
                current, current_distance = candidate, candidate_distance
                break
        else:
            raise DescentStuckError(
                f"No neighbour of {sequences.format_sequence(current)!r}"
                f" improves on distance {current_distance}"
            )

    return RecoveryReport(
        recovered=current,
        queries_used=session.query_count - start,
        level=_LEVELS[neighborhood.distance_kind],
        bound=budget,
        strategy_id=session.strategy_id,
        n=session.n,
    )


class _DescentStrategy(Strategy):
    init: Sequence = (0,)
    min_input_length = 1

    def neighborhood(self, n: int) -> Neighborhood:
        return neighborhood_for(self.distance_kind, n)

    def bound(self, n: int, hidden: Sequence) -> int:
        return 1 + n * self.neighborhood(n).size_bound

    def query_length_limit(self, n: int) -> int:
        return self.neighborhood(n).max_length

    def recover(self, session: Session) -> Sequence:
        report = descend(
            session,
            self.neighborhood(session.n),
            self.init,
            self.bound(session.n, EMPTY),
        )
        return report.recovered


class CoordinateDescentEdit(_DescentStrategy):
    strategy_id = "cd.edit"
    distance_kind = DistanceKind.EDIT
    bound_formula = "(3n + 2)n"
    init = EMPTY
    min_input_length = 0

    def bound(self, n: int, hidden: Sequence) -> int:
        return (3 * n + 2) * n


class CoordinateDescentDtw(_DescentStrategy):
    strategy_id = "cd.dtw"
    distance_kind = DistanceKind.DTW
    level = RecoveryLevel.ZERO_DISTANCE
    bound_formula = "(4n + 2)n + 1"


class CoordinateDescentFrechet(_DescentStrategy):
    strategy_id = "cd.frechet"
    distance_kind = DistanceKind.FRECHET
    level = RecoveryLevel.EQUIVALENCE_CLASS
    bound_formula = "2n + 1"

    def bound(self, n: int, hidden: Sequence) -> int:
        return 2 * n + 1
