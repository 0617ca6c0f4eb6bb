"""
Simulated distance oracles.

A session hides an input sequence and answers distance queries against it,
counting every query and keeping a transcript. Non-adaptive sessions only
accept a whole query plan at once, so a non-adaptive strategy cannot build
a query out of an earlier answer.

The class hierarchy here is::

                +---------+
                | Session |
                +---------+
                  |     |
    +---------------+ +---------------+
    | OracleSession | | ReplaySession |
    +---------------+ +---------------+

``ReplaySession`` answers from a recorded transcript, with the hidden input
left out, and fails as soon as a strategy asks something that was not
recorded.
"""

from __future__ import annotations

import abc
import dataclasses
import enum
import fractions
import json
import logging
from typing import Any

from seqrecover.core import distances, sequences
from seqrecover.core.distances import DistanceKind, Number
from seqrecover.core.exceptions import (
    QueryContractError,
    UnsupportedAlphabetError,
)
from seqrecover.core.sequences import Alphabet, Sequence

logger = logging.getLogger("core")

_ALLOWED_ALPHABETS = {
    DistanceKind.EDIT: {Alphabet.BINARY, Alphabet.WILDCARD},
    DistanceKind.DTW: {Alphabet.BINARY, Alphabet.RATIONAL},
    DistanceKind.FRECHET: {Alphabet.BINARY, Alphabet.RATIONAL},
}


class Mode(enum.StrEnum):
    ADAPTIVE = "adaptive"
    NON_ADAPTIVE = "non-adaptive"


class RecoveryLevel(enum.StrEnum):
    """
    The recovery guarantees, strongest first.
    """

    EXACT = "exact"
    EQUIVALENCE_CLASS = "equivalence-class"
    ZERO_DISTANCE = "zero-distance"


def default_query_length_cap(n: int) -> int:
    return 2 * n + 4


def parse_number(text: str) -> Number:
    value = fractions.Fraction(text)
    return distances.as_number(value)


@dataclasses.dataclass(frozen=True)
class TranscriptEntry:
    query: Sequence
    answer: Number

    def to_dict(self) -> dict[str, str]:
        return {
            "seq": sequences.format_sequence(self.query),
            "answer": distances.format_number(self.answer),
        }

    @classmethod
    def from_dict(cls, data: dict[str, str]) -> TranscriptEntry:
        return cls(
            query=sequences.parse(data["seq"]),
            answer=parse_number(data["answer"]),
        )


class Session(abc.ABC):
    """
    The query accounting and the adaptive/non-adaptive contract shared by
    every session.
    """

    def __init__(
        self,
        distance_kind: DistanceKind,
        n: int,
        mode: Mode = Mode.ADAPTIVE,
        p: int | float = 1,
        max_query_length: int | None = None,
        strategy_id: str = "",
    ) -> None:
        if n < 1:
            raise ValueError(f"The maximum input length must be positive, got {n}")

        self.distance_kind = DistanceKind(distance_kind)
        self.n = n
        self.mode = Mode(mode)
        self.p = p
        self.max_query_length = (
            default_query_length_cap(n)
            if max_query_length is None
            else max_query_length
        )
        self.strategy_id = strategy_id
        self._transcript: list[TranscriptEntry] = []
        self._plan_submitted = False

    @property
    def query_count(self) -> int:
        return len(self._transcript)

    @property
    def transcript(self) -> tuple[TranscriptEntry, ...]:
        return tuple(self._transcript)

    @abc.abstractmethod
    def _answer(self, q: Sequence) -> Number:
        """
        The distance between the hidden input and the query.
        """

    def _check_query(self, q: Sequence) -> None:
        alphabet = sequences.alphabet_of(q)
        if alphabet not in _ALLOWED_ALPHABETS[self.distance_kind]:
            raise UnsupportedAlphabetError(
                f"A {alphabet} query is not allowed under"
                f" {self.distance_kind} distance"
            )
        if len(q) > self.max_query_length:
            raise QueryContractError(
                f"Query of length {len(q)} exceeds the limit of"
                f" {self.max_query_length}"
            )

    def _ask(self, q: Sequence) -> Number:
        answer = self._answer(q)
        self._transcript.append(TranscriptEntry(query=q, answer=answer))
        logger.debug(
            f"Query {sequences.format_sequence(q)!r} answered with"
            f" {distances.format_number(answer)}"
        )
        return answer

    def query(self, q: Sequence) -> Number:
        """
        Ask a single adaptive query.
        """

        if self.mode is Mode.NON_ADAPTIVE:
            raise QueryContractError(
                "A non-adaptive session only accepts a whole query plan"
            )
        self._check_query(q)
        return self._ask(q)

    def submit_plan(self, plan: list[Sequence]) -> list[Number]:
        """
        Register a whole non-adaptive plan and receive all of its answers.

        Every query is validated before any answer is revealed.
        """

        if self.mode is not Mode.NON_ADAPTIVE:
            raise QueryContractError("Only non-adaptive sessions take plans")
        if self._plan_submitted:
            raise QueryContractError("A query plan has already been submitted")

        for q in plan:
            self._check_query(q)
        self._plan_submitted = True

        return [self._ask(q) for q in plan]

    def to_dict(self) -> dict[str, Any]:
        return {
            "strategy": self.strategy_id,
            "distance": str(self.distance_kind),
            "p": distances.format_number(self.p) if self.p != distances.INF else "inf",
            "mode": str(self.mode),
            "n": self.n,
            "max_query_length": self.max_query_length,
            "queries": [entry.to_dict() for entry in self._transcript],
        }


class OracleSession(Session):
    """
    A session answering exactly against a hidden binary input.
    """

    def __init__(
        self,
        hidden: Sequence,
        distance_kind: DistanceKind,
        n: int,
        mode: Mode = Mode.ADAPTIVE,
        p: int | float = 1,
        max_query_length: int | None = None,
        strategy_id: str = "",
    ) -> None:
        super().__init__(
            distance_kind=distance_kind,
            n=n,
            mode=mode,
            p=p,
            max_query_length=max_query_length,
            strategy_id=strategy_id,
        )
        if not sequences.is_binary(hidden):
            raise UnsupportedAlphabetError("Hidden inputs must be binary")
        if len(hidden) > n:
            raise ValueError(
                f"The hidden input has length {len(hidden)}, more than {n}"
            )
        self.hidden = hidden

    def _answer(self, q: Sequence) -> Number:
        return distances.distance(self.distance_kind, self.hidden, q, self.p)

    def to_dict(self, include_hidden: bool = True) -> dict[str, Any]:
        data = super().to_dict()
        if include_hidden:
            data["hidden"] = sequences.format_sequence(self.hidden)
        return data

    def to_json(self, include_hidden: bool = True) -> str:
        return json.dumps(self.to_dict(include_hidden=include_hidden))


class ReplaySession(Session):
    """
    A session that replays the answers of a recorded transcript.
    """

    def __init__(
        self,
        recorded: list[TranscriptEntry],
        distance_kind: DistanceKind,
        n: int,
        mode: Mode = Mode.ADAPTIVE,
        p: int | float = 1,
        max_query_length: int | None = None,
        strategy_id: str = "",
    ) -> None:
        super().__init__(
            distance_kind=distance_kind,
            n=n,
            mode=mode,
            p=p,
            max_query_length=max_query_length,
            strategy_id=strategy_id,
        )
        self._recorded = list(recorded)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ReplaySession:
        p = data.get("p", "1")
        return cls(
            recorded=[TranscriptEntry.from_dict(entry) for entry in data["queries"]],
            distance_kind=DistanceKind(data["distance"]),
            n=int(data["n"]),
            mode=Mode(data.get("mode", Mode.ADAPTIVE)),
            p=distances.INF if p == "inf" else int(p),
            max_query_length=data.get("max_query_length"),
            strategy_id=data.get("strategy", ""),
        )

    @classmethod
    def from_json(cls, text: str) -> ReplaySession:
        return cls.from_dict(json.loads(text))

    def _answer(self, q: Sequence) -> Number:
        position = self.query_count
        if position >= len(self._recorded):
            raise QueryContractError(
                f"The transcript only records {len(self._recorded)} queries"
            )

        expected = self._recorded[position]
        if expected.query != q:
            raise QueryContractError(
                f"Query {position + 1} deviates from the transcript:"
                f" {sequences.format_sequence(q)!r} instead of"
                f" {sequences.format_sequence(expected.query)!r}"
            )

        return expected.answer


@dataclasses.dataclass(frozen=True)
class RecoveryReport:
    """
    The outcome of running one strategy against one hidden input.
    """

    recovered: Sequence
    queries_used: int
    level: RecoveryLevel
    bound: int
    strategy_id: str
    n: int

    @property
    def bound_ok(self) -> bool:
        return self.queries_used <= self.bound

    def to_dict(self) -> dict[str, Any]:
        return {
            "strategy": self.strategy_id,
            "n": self.n,
            "recovered": sequences.format_sequence(self.recovered),
            "queries_used": self.queries_used,
            "bound": self.bound,
            "bound_ok": self.bound_ok,
            "level": str(self.level),
        }
