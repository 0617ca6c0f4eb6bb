"""
Recovering a hidden binary input from DTW distance queries.

Binary queries alone can only pin the hidden input down to its equivalence
class, so most of these strategies add rational "extra characters" to their
queries:

- ``dtw.adaptive.half`` adds ``1/2`` and asks at most ``n + 1`` queries.
- ``dtw.nonadaptive.equiv2n`` is binary and finds the equivalence class.
- ``dtw.nonadaptive.oneextra`` adds ``1/2`` and asks ``n² + n`` queries.
- ``dtw.nonadaptive.twoextra`` adds two rationals and asks ``n + 2``.
- ``dtw.nonadaptive.fourquery`` asks 4 queries over ``O(n)`` rationals.

The last two decode through the residues of exact answers, relying on the
optimal matchings leaving every query character with degree 1.
"""

from __future__ import annotations

import dataclasses
import enum
import fractions
import itertools
import logging
import math
from typing import Any, ClassVar

import cachetools

from seqrecover.core import distances, sequences
from seqrecover.core.distances import DistanceKind, Matching, Number
from seqrecover.core.exceptions import (
    AdversarialOracleError,
    DistanceDomainError,
)
from seqrecover.core.oracle import RecoveryLevel, Session
from seqrecover.core.sequences import HALF, Sequence
from seqrecover.core.strategies import NonAdaptiveStrategy, Strategy

logger = logging.getLogger("recovery")

Fraction = fractions.Fraction

DEFAULT_A = Fraction(1, 3)
DEFAULT_B = Fraction(2, 5)


class DtwPlanVariant(enum.StrEnum):
    EQUIVALENCE_2N = "equivalence-2n"
    ONE_EXTRA = "one-extra"
    TWO_EXTRA = "two-extra"
    FOUR_QUERY_BIG_ALPHA = "four-query-big-alpha"


@dataclasses.dataclass(frozen=True)
class DtwQueryPlan:
    variant: DtwPlanVariant
    queries: tuple[Sequence, ...]
    params: dict[str, Any] = dataclasses.field(default_factory=dict)


@dataclasses.dataclass(frozen=True)
class EquivalenceClassId:
    """
    An equivalence class, named by its lexicographically smallest member.
    """

    canonical: Sequence


def adaptive_recover(session: Session) -> Sequence:
    """
    Recover a non-empty hidden input with the ``1/2`` character.

    Every character matched against ``1/2`` costs exactly ``1/2``, so
    ``1/2`` gives the length away, and a query that agrees with the hidden
    prefix followed by ``1/2`` padding costs exactly half the padding.
    """

    length = 2 * Fraction(session.query((HALF,)))
    if length.denominator != 1 or not 1 <= length <= session.n:
        raise AdversarialOracleError(f"Length {length} is out of range")
    length = int(length)

    def agrees(q: Sequence) -> bool:
        padding = Fraction(length - len(q), 2)
        answer = session.query(q + (HALF,) * (length - len(q)))
        if answer < padding:
            raise AdversarialOracleError(
                f"d(s, q) = {answer} is below the padding cost {padding}"
            )
        return answer == padding

    bits = [0 if agrees((0,)) else 1]
    for k in range(1, length):
        repeat = bits[-1]
        bits.append(repeat if agrees((*bits, repeat)) else 1 - repeat)

    return tuple(bits)


def z_query(i: int, n: int) -> Sequence:
    """
    The ``i``-run query of the equivalence plan starting with 0. The
    one-run query is the single character 0; from two runs on, the outer
    runs have length ``n`` and the inner runs length 1.
    """

    if i == 1:
        return (0,)
    m, odd = divmod(i, 2)
    if odd:
        return (0,) * n + (1,) + (0, 1) * (m - 1) + (0,) * n
    return (0,) * n + (1, 0) * (m - 1) + (1,) * n


def o_query(i: int, n: int) -> Sequence:
    return sequences.complement(z_query(i, n))


@cachetools.cached(cache=cachetools.LRUCache(maxsize=64))
def equivalence_plan(n: int) -> DtwQueryPlan:
    return DtwQueryPlan(
        variant=DtwPlanVariant.EQUIVALENCE_2N,
        queries=(
            *(z_query(i, n) for i in range(1, n + 1)),
            *(o_query(i, n) for i in range(1, n + 1)),
        ),
    )


def signature(s: Sequence, n: int) -> tuple[Number, ...]:
    return tuple(
        distances.dtw_distance(s, q).value for q in equivalence_plan(n).queries
    )


@cachetools.cached(cache=cachetools.LRUCache(maxsize=16))
def signature_table(n: int) -> dict[tuple[Number, ...], EquivalenceClassId]:
    """
    Map every signature of a non-empty binary input of length at most ``n``
    to its class.
    """

    logger.info(f"Building the DTW signature table for n={n}")
    members: dict[tuple[Number, ...], list[Sequence]] = {}
    for s in sequences.binary_sequences(n, min_length=1):
        members.setdefault(signature(s, n), []).append(s)

    return {
        key: EquivalenceClassId(canonical=min(group))
        for key, group in members.items()
    }


def equivalence_recover(n: int, answers: list[Number]) -> EquivalenceClassId:
    try:
        return signature_table(n)[tuple(answers)]
    except KeyError:
        raise AdversarialOracleError(
            "No binary input has this signature"
        ) from None


def one_extra_query(start: int, i: int, k: int) -> Sequence:
    """
    The alternating sequence of length ``i`` starting with ``start``, then
    ``k`` copies of ``1/2``.
    """

    return sequences.alternating(i, start) + (HALF,) * k


def _one_extra_keys(n: int) -> list[tuple[int, int, int]]:
    return [
        (start, i, k)
        for start in (0, 1)
        for i in range(1, n + 1)
        for k in range(n - i + 1)
    ]


@cachetools.cached(cache=cachetools.LRUCache(maxsize=64))
def one_extra_plan(n: int) -> DtwQueryPlan:
    return DtwQueryPlan(
        variant=DtwPlanVariant.ONE_EXTRA,
        queries=tuple(
            one_extra_query(*key) for key in _one_extra_keys(n)
        ),
    )


def one_extra_decode(n: int, answers: list[Number]) -> Sequence:
    """
    Decode the one-extra plan.

    The zero answer names the first character and the run count ``t``. The
    suffix sums ``S_i`` of the run lengths are the smallest padding ``k``
    with answer ``k/2``, which gives every run length but the first; the
    first is the unique candidate consistent with all the answers.
    """

    plan = one_extra_plan(n).queries
    if len(answers) != len(plan):
        raise ValueError(f"Expected {len(plan)} answers, got {len(answers)}")
    answer_of = dict(zip(_one_extra_keys(n), answers, strict=True))

    zero_hits = [
        (start, i)
        for start in (0, 1)
        for i in range(1, n + 1)
        if answer_of[start, i, 0] == 0
    ]
    if len(zero_hits) != 1:
        raise AdversarialOracleError(
            f"Expected exactly one zero answer, found {len(zero_hits)}"
        )
    start, run_count = zero_hits[0]

    suffix_sums = []
    for i in range(1, run_count + 1):
        suffix_sum = next(
            (
                k
                for k in range(n - i + 1)
                if answer_of[start, i, k] == Fraction(k, 2)
            ),
            None,
        )
        if suffix_sum is None:
            raise AdversarialOracleError(f"No padding fits run {i}")
        suffix_sums.append(suffix_sum)

    tail = [
        before - after for before, after in itertools.pairwise(suffix_sums)
    ]
    if suffix_sums[-1] != 0 or any(length < 1 for length in tail):
        raise AdversarialOracleError("The suffix sums are not decreasing")

    chars = sequences.alternating(run_count, start)
    consistent = [
        candidate
        for first in range(1, n - suffix_sums[0] + 1)
        if _answers_match(
            candidate := sequences.RunDecomposition(
                first_char=start, run_lengths=(first, *tail)
            ).reconstruct(),
            plan,
            answers,
        )
    ]
    logger.debug(
        f"{len(consistent)} first-run candidates fit runs of"
        f" {sequences.format_sequence(chars)}"
    )
    if len(consistent) != 1:
        raise AdversarialOracleError(
            f"Expected one consistent input, found {len(consistent)}"
        )

    return consistent[0]


def _answers_match(
    candidate: Sequence,
    plan: tuple[Sequence, ...],
    answers: list[Number],
) -> bool:
    return all(
        distances.dtw_distance(candidate, q).aggregated_cost == answer
        for q, answer in zip(plan, answers, strict=True)
    )


def validate_extra_pair(a: Fraction, b: Fraction) -> None:
    """
    Raise ``ValueError`` unless ``0 < b - a < a < b < 1/2`` and the
    denominators of ``a`` and ``b`` are coprime.
    """

    if not 0 < b - a < a < b < HALF:
        raise ValueError(f"Need 0 < b - a < a < b < 1/2, got a={a}, b={b}")
    if math.gcd(a.denominator, b.denominator) != 1:
        raise ValueError(
            f"The denominators of a={a} and b={b} must be coprime"
        )


@dataclasses.dataclass(frozen=True)
class ResidueRule:
    """
    How to read a bit off a scaled two-extra answer.

    Answers are multiplied by ``factor`` and reduced modulo ``modulus``. The
    difference between consecutive residues is ``zero`` where the bit that
    switched from ``a`` to ``b`` is 0, and ``one`` where it is 1.
    """

    factor: int
    modulus: int
    zero: int
    one: int

    @classmethod
    def for_pair(cls, a: Fraction, b: Fraction, scale: int = 1) -> ResidueRule:
        validate_extra_pair(a, b)
        modulus = b.denominator
        shift = scale * a.denominator * b.numerator
        rule = cls(
            factor=scale * a.denominator * b.denominator,
            modulus=modulus,
            zero=shift % modulus,
            one=-shift % modulus,
        )
        if rule.zero == rule.one:
            raise ValueError(f"Scale {scale} makes the residues collide")
        return rule


@cachetools.cached(cache=cachetools.LRUCache(maxsize=64))
def two_extra_plan(
    n: int,
    a: Fraction = DEFAULT_A,
    b: Fraction = DEFAULT_B,
) -> DtwQueryPlan:
    """
    ``a^(n-i) b^i`` for ``i = 1..n``, then ``0`` and ``1``.
    """

    validate_extra_pair(a, b)
    return DtwQueryPlan(
        variant=DtwPlanVariant.TWO_EXTRA,
        queries=(
            *((a,) * (n - i) + (b,) * i for i in range(1, n + 1)),
            (0,),
            (1,),
        ),
        params={"a": a, "b": b},
    )


def two_extra_decode(
    n: int,
    answers: list[Number],
    a: Fraction = DEFAULT_A,
    b: Fraction = DEFAULT_B,
    scale: int = 1,
) -> Sequence:
    """
    Decode the two-extra plan.

    Against a query of length ``n``, the optimal matching stretches the
    leftmost 0 of the hidden input to absorb the ``n - ℓ`` surplus query
    characters. The residues recover that amplified string ``x`` from its
    last character backwards; removing the surplus 0s gives the input.
    """

    if len(answers) != n + 2:
        raise ValueError(f"Expected {n + 2} answers, got {len(answers)}")
    *amplifying, ones, zeros = answers

    if ones == 0:
        return (0,) * int(zeros)
    if zeros == 0:
        return (1,) * int(ones)
    if ones + zeros > n:
        raise AdversarialOracleError(f"Length {ones + zeros} exceeds n={n}")

    rule = ResidueRule.for_pair(a, b, scale)
    amplified: list[int] = [0] * n
    previous = 0
    for i, answer in enumerate(amplifying, start=1):
        scaled = Fraction(answer) * rule.factor
        if scaled.denominator != 1:
            raise AdversarialOracleError(f"Answer {answer} has a foreign denominator")

        coefficient = scaled.numerator % rule.modulus
        residue = (coefficient - previous) % rule.modulus
        previous = coefficient
        if residue == rule.zero:
            amplified[n - i] = 0
        elif residue == rule.one:
            amplified[n - i] = 1
        else:
            raise AdversarialOracleError(
                f"Residue {residue} at query {i} is neither {rule.zero}"
                f" nor {rule.one}"
            )

    first_zero = amplified.index(0) if 0 in amplified else n
    surplus = n - int(ones + zeros)
    block = amplified[first_zero : first_zero + surplus + 1]
    if len(block) != surplus + 1 or any(block):
        raise AdversarialOracleError("The amplified block is not all 0s")

    recovered = (
        *amplified[:first_zero],
        0,
        *amplified[first_zero + surplus + 1 :],
    )
    if recovered.count(0) != zeros or recovered.count(1) != ones:
        raise AdversarialOracleError("The decoded counts disagree")

    return recovered


def odd_primes(count: int) -> list[int]:
    """
    The first ``count`` primes after 2, by a sieve that doubles its limit
    until it has found enough.
    """

    limit = 16
    while True:
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for k in range(2, math.isqrt(limit) + 1):
            if sieve[k]:
                sieve[k * k :: k] = bytes(len(range(k * k, limit + 1, k)))
        primes = [k for k in range(3, limit + 1) if sieve[k]]
        if len(primes) >= count:
            return primes[:count]
        limit *= 2


def quarter_residue(p: int) -> int:
    """
    The smallest ``x`` with ``1/4 < x/p < 1/2``.
    """

    return p // 4 + 1


@cachetools.cached(cache=cachetools.LRUCache(maxsize=64))
def four_query_plan(n: int) -> DtwQueryPlan:
    """
    ``0``, ``1``, the increasing query ``q`` of fractions ``x_i/p_i`` and its
    mirror ``1 - q``.
    """

    primes = odd_primes(n)
    q = tuple(sorted(Fraction(quarter_residue(p), p) for p in primes))
    return DtwQueryPlan(
        variant=DtwPlanVariant.FOUR_QUERY_BIG_ALPHA,
        queries=((0,), (1,), q, tuple(1 - symbol for symbol in q)),
        params={
            "primes": tuple(primes),
            "residues": tuple(quarter_residue(p) for p in primes),
        },
    )


def _matched_bits(answer: Number, query: Sequence, product: int) -> list[int]:
    """
    Read which binary character each query symbol was matched to.

    Modulo ``p``, only the term of the symbol with denominator ``p``
    survives in the numerator of the answer.
    """

    answer = Fraction(answer)
    if answer.denominator != product:
        raise AdversarialOracleError(
            f"The numerator of {answer} shares a prime with the product"
        )

    bits = []
    for symbol in query:
        p, x = symbol.denominator, symbol.numerator
        rest = product // p
        residue = answer.numerator % p
        if residue == x * rest % p:
            bits.append(0)
        elif residue == (p - x) * rest % p:
            bits.append(1)
        else:
            raise AdversarialOracleError(f"Residue {residue} mod {p} is illegal")

    return bits


def _blocks(bits: list[int]) -> list[tuple[int, int]]:
    return [(bit, len(list(group))) for bit, group in itertools.groupby(bits)]


def four_query_decode(n: int, answers: list[Number]) -> Sequence:
    """
    Decode the four-query plan.

    The matched strings ``m`` (from ``q``) and ``m'`` (from ``1 - q``) have
    the same blocks as the hidden input. Blocks of 1s have the right length
    in ``m`` and blocks of 0s in ``m'``.
    """

    if len(answers) != 4:
        raise ValueError(f"Expected 4 answers, got {len(answers)}")
    ones, zeros, low_answer, high_answer = answers

    if ones == 0:
        return (0,) * int(zeros)
    if zeros == 0:
        return (1,) * int(ones)

    plan = four_query_plan(n)
    product = math.prod(plan.params["primes"])
    low_blocks = _blocks(_matched_bits(low_answer, plan.queries[2], product))
    high_blocks = _blocks(_matched_bits(high_answer, plan.queries[3], product))
    if [bit for bit, _ in low_blocks] != [bit for bit, _ in high_blocks]:
        raise AdversarialOracleError("The matched strings have different blocks")

    recovered = tuple(
        itertools.chain.from_iterable(
            (bit,) * (low if bit == 1 else high)
            for (bit, low), (_, high) in zip(low_blocks, high_blocks, strict=True)
        )
    )
    if recovered.count(0) != zeros or recovered.count(1) != ones:
        raise AdversarialOracleError("The decoded counts disagree")

    return recovered


def build_isomorphic_matching(s: Sequence, i: int, n: int) -> Matching:
    """
    The optimal matching between ``s`` and the two-extra query
    ``a^(n-i) b^i``.

    Characters before the first 0 of ``s`` are matched one-to-one, the first
    0 absorbs the ``n - ℓ + 1`` query characters around it, and the rest
    are matched one-to-one again. The edges do not depend on ``i``.
    """

    if not 1 <= i <= n:
        raise ValueError(f"Need 1 <= i <= n, got i={i}, n={n}")
    if 0 not in s or 1 not in s:
        raise DistanceDomainError("The input needs both a 0 and a 1")
    if len(s) > n:
        raise DistanceDomainError(f"The input is longer than n={n}")

    first_zero = s.index(0) + 1
    surplus = n - len(s)
    edges = [(j, j) for j in range(1, first_zero)]
    edges += [(j, first_zero) for j in range(first_zero, first_zero + surplus + 1)]
    edges += [(j, j - surplus) for j in range(first_zero + surplus + 1, n + 1)]

    return Matching(edges=tuple(edges))


def _query_assignment(matching: Matching) -> dict[int, int]:
    assignment = dict(matching.edges)
    if len(assignment) != len(matching.edges):
        raise DistanceDomainError("Shifting needs every query degree to be 1")
    return assignment


def shift_candidates(matching: Matching, s: Sequence) -> list[tuple[int, int]]:
    """
    Every pair ``(x, y)`` of 0s of ``s`` that can be shifted: ``s[x]`` has
    degree above 1 and everything strictly between has degree 1.
    """

    _query_assignment(matching)
    degrees = [matching.input_degree(j) for j in range(1, len(s) + 1)]
    candidates = []
    for x in range(1, len(s) + 1):
        if s[x - 1] != 0 or degrees[x - 1] < 2:
            continue
        for y in range(x + 1, len(s) + 1):
            if s[y - 1] == 0:
                candidates.append((x, y))
            if degrees[y - 1] != 1:
                break

    return candidates


def shift_matching(matching: Matching, s: Sequence, x: int, y: int) -> Matching:
    """
    Move one unit of degree from the 0 at ``s[x]`` to the 0 at ``s[y]`` by
    sliding every edge in between one input position to the right.
    """

    if (x, y) not in shift_candidates(matching, s):
        raise DistanceDomainError(f"Cannot shift from {x} to {y}")

    assignment = _query_assignment(matching)
    last_on_x = max(i for i, j in assignment.items() if j == x)
    for offset in range(y - x):
        assignment[last_on_x + offset] += 1

    return Matching(edges=tuple(assignment.items()))


class DtwAdaptiveHalf(Strategy):
    strategy_id = "dtw.adaptive.half"
    distance_kind = DistanceKind.DTW
    extra_characters = 1
    bound_formula = "n + 1"
    min_input_length = 1

    def bound(self, n: int, hidden: Sequence) -> int:
        return n + 1

    def recover(self, session: Session) -> Sequence:
        return adaptive_recover(session)


class DtwEquivalence2n(NonAdaptiveStrategy):
    strategy_id = "dtw.nonadaptive.equiv2n"
    distance_kind = DistanceKind.DTW
    level = RecoveryLevel.EQUIVALENCE_CLASS
    bound_formula = "2n"
    min_input_length = 1

    def plan(self, n: int) -> list[Sequence]:
        return list(equivalence_plan(n).queries)

    def decode(self, n: int, answers: list[Number]) -> Sequence:
        return equivalence_recover(n, answers).canonical

    def is_correct(self, hidden: Sequence, recovered: Sequence) -> bool:
        n = max(len(hidden), len(recovered))
        return signature(hidden, n) == signature(recovered, n)


class DtwOneExtra(NonAdaptiveStrategy):
    strategy_id = "dtw.nonadaptive.oneextra"
    distance_kind = DistanceKind.DTW
    extra_characters = 1
    bound_formula = "n² + n"
    min_input_length = 1

    def plan(self, n: int) -> list[Sequence]:
        return list(one_extra_plan(n).queries)

    def decode(self, n: int, answers: list[Number]) -> Sequence:
        return one_extra_decode(n, answers)


class DtwTwoExtra(NonAdaptiveStrategy):
    strategy_id = "dtw.nonadaptive.twoextra"
    distance_kind = DistanceKind.DTW
    extra_characters = 2
    bound_formula = "n + 2"
    min_input_length = 1

    def plan(self, n: int) -> list[Sequence]:
        return list(
            two_extra_plan(
                n, self.configuration.two_extra_a, self.configuration.two_extra_b
            ).queries
        )

    def decode(self, n: int, answers: list[Number]) -> Sequence:
        return two_extra_decode(
            n,
            answers,
            a=self.configuration.two_extra_a,
            b=self.configuration.two_extra_b,
            scale=self.configuration.two_extra_scale,
        )


class DtwFourQuery(NonAdaptiveStrategy):
    strategy_id = "dtw.nonadaptive.fourquery"
    distance_kind = DistanceKind.DTW
    extra_characters = "2n"
    bound_formula = "4"
    min_input_length = 1

    def plan(self, n: int) -> list[Sequence]:
        return list(four_query_plan(n).queries)

    def decode(self, n: int, answers: list[Number]) -> Sequence:
        return four_query_decode(n, answers)
