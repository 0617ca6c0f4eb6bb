"""
The strategy classes that all recovery strategies should inherit from.

Concrete strategies declare a ``strategy_id`` and are then registered
automatically in the ``Strategy.strategies`` class property, which the CLI
and the reports use to look them up::

    >>> type(Strategy.strategies)
    <class 'dict'>

The class hierarchy here is::

            +-------+
            |  ABC  |
            +-------+
                |
           +----------+
           | Strategy |
           +----------+
                |
    +---------------------+
    | NonAdaptiveStrategy |
    +---------------------+

Adaptive strategies implement ``recover`` directly against a session.
Non-adaptive strategies only implement ``plan`` and ``decode``: the plan is a
function of ``n`` alone and is submitted to the session in one batch.
"""

from __future__ import annotations

import abc
import concurrent.futures
import dataclasses
import functools
import logging
from collections.abc import Iterable, Iterator
from typing import Any, ClassVar

from seqrecover.core import distances, sequences
from seqrecover.core.configuration import Configuration
from seqrecover.core.distances import DistanceKind, Number
from seqrecover.core.exceptions import UnknownNameError
from seqrecover.core.oracle import (
    Mode,
    OracleSession,
    RecoveryLevel,
    RecoveryReport,
    ReplaySession,
    Session,
)
from seqrecover.core.sequences import EMPTY, Sequence

logger = logging.getLogger("core")


class Strategy(abc.ABC):
    """
    A way of recovering a hidden input from distance queries.
    """

    strategies: ClassVar[dict[str, type[Strategy]]] = {}

    strategy_id: ClassVar[str]
    distance_kind: ClassVar[DistanceKind]
    mode: ClassVar[Mode] = Mode.ADAPTIVE
    level: ClassVar[RecoveryLevel] = RecoveryLevel.EXACT
    extra_characters: ClassVar[int | str] = 0
    bound_formula: ClassVar[str]
    min_input_length: ClassVar[int] = 0

    def __init_subclass__(cls, **kwargs: Any) -> None:
        """
        Register every subclass that declares its own ``strategy_id``.
        """

        super().__init_subclass__(**kwargs)
        if "strategy_id" in cls.__dict__:
            logger.debug(
                f"Adding class {cls.__name__} to `Strategy.strategies` with"
                f" key '{cls.strategy_id}'"
            )
            Strategy.strategies[cls.strategy_id] = cls

    def __init__(self, configuration: Configuration | None = None) -> None:
        self.configuration = configuration or Configuration.from_default()

    @abc.abstractmethod
    def bound(self, n: int, hidden: Sequence) -> int:
        """
        The declared query bound for inputs of length at most ``n``. Some
        bounds also depend on the hidden input, such as its run count.
        """

    @abc.abstractmethod
    def recover(self, session: Session) -> Sequence:
        """
        Recover the hidden input, or a representative of its class.
        """

    def query_length_limit(self, n: int) -> int:
        return self.configuration.query_length_cap(n)

    def open_session(self, hidden: Sequence, n: int) -> OracleSession:
        return OracleSession(
            hidden=hidden,
            distance_kind=self.distance_kind,
            n=n,
            mode=self.mode,
            max_query_length=self.query_length_limit(n),
            strategy_id=self.strategy_id,
        )

    def run_session(self, session: Session, bound_input: Sequence) -> RecoveryReport:
        """
        Recover through an open session. The bound is evaluated on
        ``bound_input``, which is the hidden input when it is known.
        """

        recovered = self.recover(session)
        return RecoveryReport(
            recovered=recovered,
            queries_used=session.query_count,
            level=self.level,
            bound=self.bound(session.n, bound_input),
            strategy_id=self.strategy_id,
            n=session.n,
        )

    def run(self, hidden: Sequence, n: int) -> RecoveryReport:
        """
        Open a session on the hidden input and recover it.
        """

        return self.run_session(self.open_session(hidden, n), hidden)

    def replay(self, session: ReplaySession) -> RecoveryReport:
        """
        Recover from a recorded transcript instead of a hidden input.
        """

        report = self.run_session(session, EMPTY)
        return dataclasses.replace(
            report, bound=self.bound(session.n, report.recovered)
        )

    def is_correct(self, hidden: Sequence, recovered: Sequence) -> bool:
        """
        Whether the recovered sequence meets the strategy's recovery level.

        Class-level strategies whose classes are not the zero-distance
        classes must override this.
        """

        if self.level is RecoveryLevel.EXACT:
            return hidden == recovered
        return distances.distance(self.distance_kind, hidden, recovered) == 0

    def inputs(self, n: int) -> Iterator[Sequence]:
        """
        Every hidden input the strategy supports, in canonical order.
        """

        yield from sequences.binary_sequences(n, self.min_input_length)

    def describe(self) -> dict[str, Any]:
        return {
            "strategy": self.strategy_id,
            "distance": str(self.distance_kind),
            "mode": str(self.mode),
            "level": str(self.level),
            "extra_characters": self.extra_characters,
            "bound": self.bound_formula,
        }


class NonAdaptiveStrategy(Strategy, abc.ABC):
    """
    A strategy whose whole query plan is fixed by ``n``.
    """

    mode: ClassVar[Mode] = Mode.NON_ADAPTIVE

    @abc.abstractmethod
    def plan(self, n: int) -> list[Sequence]:
        """
        The queries to ask, as a pure function of ``n``.
        """

    @abc.abstractmethod
    def decode(self, n: int, answers: list[Number]) -> Sequence:
        """
        Turn the plan's answers into the recovered sequence.
        """

    def bound(self, n: int, hidden: Sequence) -> int:
        return len(self.plan(n))

    def query_length_limit(self, n: int) -> int:
        return max(
            super().query_length_limit(n),
            max((len(q) for q in self.plan(n)), default=0),
        )

    def recover(self, session: Session) -> Sequence:
        answers = session.submit_plan(self.plan(session.n))
        return self.decode(session.n, answers)


@dataclasses.dataclass(frozen=True)
class RecoveryOutcome:
    """
    A report together with the hidden input it was run against.
    """

    hidden: Sequence
    report: RecoveryReport
    correct: bool
    transcript: dict[str, Any] | None = None

    @property
    def ok(self) -> bool:
        return self.correct and self.report.bound_ok

    def to_dict(self) -> dict[str, Any]:
        data = {
            "hidden": sequences.format_sequence(self.hidden),
            **self.report.to_dict(),
            "correct": self.correct,
        }
        if self.transcript is not None:
            data["transcript"] = self.transcript
        return data


def _recover_one(
    strategy: Strategy,
    n: int,
    include_transcript: bool,
    hidden: Sequence,
) -> RecoveryOutcome:
    session = strategy.open_session(hidden, n)
    report = strategy.run_session(session, hidden)
    return RecoveryOutcome(
        hidden=hidden,
        report=report,
        correct=strategy.is_correct(hidden, report.recovered),
        transcript=(
            session.to_dict(include_hidden=False) if include_transcript else None
        ),
    )


def run_batch(
    strategy: Strategy,
    n: int,
    hiddens: Iterable[Sequence],
    workers: int = 1,
    include_transcript: bool = False,
) -> Iterator[RecoveryOutcome]:
    """
    Run the strategy against every hidden input, yielding the outcomes in
    input order.

    With more than one worker the inputs are spread over a process pool.
    """

    recover_one = functools.partial(_recover_one, strategy, n, include_transcript)
    if workers <= 1:
        yield from map(recover_one, hiddens)
        return

    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(recover_one, hiddens, chunksize=64)


def get_strategy(
    strategy_id: str,
    configuration: Configuration | None = None,
) -> Strategy:
    """
    Instantiate the registered strategy with the given id.
    """

    try:
        strategy_class = Strategy.strategies[strategy_id]
    except KeyError:
        raise UnknownNameError(
            f"No strategy is registered as {strategy_id!r}; choose from"
            f" {', '.join(sorted(Strategy.strategies))}"
        ) from None

    return strategy_class(configuration)
