"""
Recovering the Fréchet class of a hidden binary input.

Two binary sequences are at Fréchet distance 0 exactly when they have the
same condensed expression, and no query, even one with rational symbols,
tells them apart. So the best possible outcome is the class, named by its
alternating representative, and ``2n - 1`` binary queries find it.
"""

from __future__ import annotations

import dataclasses
import fractions
import logging
import random

from seqrecover.core import distances, sequences
from seqrecover.core.distances import DistanceKind, Number
from seqrecover.core.exceptions import AdversarialOracleError
from seqrecover.core.oracle import RecoveryLevel
from seqrecover.core.sequences import Sequence
from seqrecover.core.strategies import NonAdaptiveStrategy

logger = logging.getLogger("recovery")


@dataclasses.dataclass(frozen=True, order=True)
class FrechetClass:
    """
    The sequences whose condensed expression is the alternating sequence
    of this length and first character.
    """

    length: int
    start_bit: int

    @property
    def representative(self) -> Sequence:
        return sequences.alternating(self.length, self.start_bit)


def classes(n: int) -> list[FrechetClass]:
    """
    The ``2n`` classes of non-empty inputs of length at most ``n``, shortest
    first and starting with 0 before 1.
    """

    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return [
        FrechetClass(length=length, start_bit=start_bit)
        for length in range(1, n + 1)
        for start_bit in (0, 1)
    ]


def class_of(s: Sequence) -> FrechetClass:
    if not s:
        raise ValueError("The empty sequence has no Fréchet class")
    return FrechetClass(length=sequences.run_count(s), start_bit=int(s[0]))


def plan(n: int) -> list[Sequence]:
    """
    Every class representative except the last one.
    """

    return [c.representative for c in classes(n)[:-1]]


def recover(n: int, answers: list[Number]) -> FrechetClass:
    """
    Name the class whose representative answered 0, or the omitted class
    when none did.
    """

    candidates = classes(n)
    if len(answers) != len(candidates) - 1:
        raise ValueError(f"Expected {len(candidates) - 1} answers, got {len(answers)}")

    zeros = [
        c for c, answer in zip(candidates[:-1], answers, strict=True) if answer == 0
    ]
    if len(zeros) > 1:
        raise AdversarialOracleError(
            f"{len(zeros)} representatives are at distance 0 from the input"
        )
    return zeros[0] if zeros else candidates[-1]


def _random_query(rng: random.Random, max_length: int, denominator: int) -> Sequence:
    return tuple(
        sequences.validate_symbol(
            fractions.Fraction(rng.randint(0, denominator), denominator)
        )
        for _ in range(rng.randint(1, max_length))
    )


def extra_chars_useless_check(
    s: Sequence,
    s2: Sequence,
    trials: int = 500,
    seed: int = 0,
    denominator: int = 12,
) -> bool:
    """
    Sample random queries over rationals in ``[0, 1]`` and check that none
    tells two Fréchet-equivalent sequences apart.

    :param s: A non-empty binary sequence.
    :param s2: A binary sequence at Fréchet distance 0 from ``s``.
    :param trials: The number of random queries.
    :param seed: The seed of the query generator.
    :param denominator: The symbols are multiples of ``1/denominator``.

    :return: Whether every sampled query answered the same for both.
    """

    if distances.frechet_distance(s, s2) != 0:
        raise ValueError("The sequences are not Fréchet-equivalent")

    rng = random.Random(seed)
    max_length = len(s) + len(s2) + 2
    for _ in range(trials):
        q = _random_query(rng, max_length, denominator)
        if distances.frechet_distance(s, q) != distances.frechet_distance(s2, q):
            logger.error(
                f"Query {sequences.format_sequence(q)!r} separates"
                f" {sequences.format_sequence(s)!r} from"
                f" {sequences.format_sequence(s2)!r}"
            )
            return False

    return True


class FrechetClasses(NonAdaptiveStrategy):
    strategy_id = "frechet.nonadaptive.classes"
    distance_kind = DistanceKind.FRECHET
    level = RecoveryLevel.EQUIVALENCE_CLASS
    bound_formula = "2n - 1"
    min_input_length = 1

    def plan(self, n: int) -> list[Sequence]:
        return plan(n)

    def decode(self, n: int, answers: list[Number]) -> Sequence:
        return recover(n, answers).representative
