"""
Unit tests for the ``seqrecover.recovery.dtw`` module.
"""

import fractions
import math

import pytest

from seqrecover.core import distances, sequences
from seqrecover.core.configuration import Configuration
from seqrecover.core.distances import DistanceKind, Matching
from seqrecover.core.exceptions import (
    AdversarialOracleError,
    DistanceDomainError,
)
from seqrecover.core.oracle import OracleSession
from seqrecover.core.strategies import get_strategy, run_batch
from seqrecover.recovery import dtw

# Just for brevity
F = fractions.Fraction
parse = sequences.parse


@pytest.mark.parametrize(
    "i, expected",
    [
        (1, "0"),
        (2, "000111"),
        (3, "0001000"),
        (4, "00010111"),
        (5, "000101000"),
    ],
)
def test__z_query(i: int, expected: str):
    """
    Test the equivalence queries starting with 0 for ``n = 3``.
    """

    assert parse(expected) == dtw.z_query(i, 3)
    assert sequences.complement(parse(expected)) == dtw.o_query(i, 3)


def test__equivalence_plan():
    """
    Test that the equivalence plan has ``2n`` queries with ``1..n`` runs.
    """

    queries = dtw.equivalence_plan(4).queries

    assert 8 == len(queries)
    assert [1, 2, 3, 4, 1, 2, 3, 4] == [sequences.run_count(q) for q in queries]
    assert 3 * 4 - 2 == max(len(q) for q in queries)


def test__signature__witness():
    """
    Test that the witness pair shares its signature.
    """

    assert dtw.signature(parse("010110"), 6) == dtw.signature(parse("011010"), 6)
    assert dtw.signature(parse("101"), 4) != dtw.signature(parse("1011"), 4)


def test__signature__single_run():
    """
    Test that inputs with one run get a signature of their own, with the
    one-run queries reading off the length.
    """

    n = 4
    zeros = [(0,) * length for length in range(1, n + 1)]
    signatures = [dtw.signature(s, n) for s in zeros]

    assert len(set(signatures)) == n
    assert (0, 1) == (signatures[0][0], signatures[0][n])
    assert [1, 2, 3, 4] == [signature[n] for signature in signatures]


def test__equivalence_recover__single_run():
    """
    Test that the equivalence strategy names all-0 and all-1 inputs
    exactly.
    """

    strategy = get_strategy("dtw.nonadaptive.equiv2n")
    for hidden in ("0", "00", "111"):
        session = strategy.open_session(parse(hidden), 4)

        assert parse(hidden) == strategy.recover(session)


def test__equivalence_recover__adversarial():
    """
    Test that a signature no input has is reported.
    """

    with pytest.raises(AdversarialOracleError):
        dtw.equivalence_recover(3, [99] * 6)


def test__equivalence_queries__outer_runs():
    """
    Test that the equivalence queries with one run fewer than an input
    read off the lengths of its first and last runs.
    """

    n = 6
    for s in sequences.binary_sequences(n, min_length=1):
        runs = sequences.decompose_runs(s)
        if runs.first_char != 0 or runs.run_count < 3:
            continue

        k = runs.run_count
        assert runs.run_lengths[0] == distances.dtw_distance(
            s, dtw.o_query(k - 1, n)
        ).value
        assert runs.run_lengths[-1] == distances.dtw_distance(
            s, dtw.z_query(k - 1, n)
        ).value


def test__one_extra_plan():
    """
    Test that the one-extra plan has ``n² + n`` queries of length at most
    ``n``.
    """

    queries = dtw.one_extra_plan(4).queries

    assert 20 == len(queries)
    assert 4 == max(len(q) for q in queries)
    assert (1, 0, sequences.HALF) == dtw.one_extra_query(1, 2, 1)


@pytest.mark.parametrize(
    "a, b",
    [
        (F(1, 5), F(2, 5)),
        (F(1, 3), F(4, 9)),
        (F(2, 5), F(1, 3)),
        (F(1, 3), F(1, 2)),
    ],
)
def test__validate_extra_pair__errors(a: F, b: F):
    """
    Test that pairs outside the constraints are rejected.
    """

    with pytest.raises(ValueError):
        dtw.validate_extra_pair(a, b)


@pytest.mark.parametrize(
    "scale, expected",
    [
        (1, dtw.ResidueRule(factor=15, modulus=5, zero=1, one=4)),
        (2, dtw.ResidueRule(factor=30, modulus=5, zero=2, one=3)),
    ],
)
def test__residue_rule(scale: int, expected: dtw.ResidueRule):
    """
    Test the residues of the default pair.
    """

    assert expected == dtw.ResidueRule.for_pair(F(1, 3), F(2, 5), scale)


def test__residue_rule__collision():
    """
    Test that a scale making the residues collide is rejected.
    """

    with pytest.raises(ValueError):
        dtw.ResidueRule.for_pair(F(1, 3), F(2, 5), scale=5)


def test__two_extra_plan():
    """
    Test that the two-extra plan is ``a^(n-i) b^i`` then ``0`` and ``1``.
    """

    a, b = dtw.DEFAULT_A, dtw.DEFAULT_B
    queries = dtw.two_extra_plan(3).queries

    assert (
        (a, a, b),
        (a, b, b),
        (b, b, b),
        (0,),
        (1,),
    ) == queries


def test__two_extra_decode__adversarial():
    """
    Test that answers with a foreign denominator are reported.
    """

    with pytest.raises(AdversarialOracleError):
        dtw.two_extra_decode(2, [F(1, 7), F(1, 7), 1, 1])
    with pytest.raises(ValueError):
        dtw.two_extra_decode(2, [1, 1])


def test__odd_primes():
    """
    Test that the odd primes are listed in order, past the first sieve.
    """

    assert [3, 5, 7, 11, 13] == dtw.odd_primes(5)
    assert 31 == len(set(dtw.odd_primes(31)))
    assert 131 == dtw.odd_primes(31)[-1]


@pytest.mark.parametrize(
    "p, expected",
    [(3, 1), (5, 2), (7, 2), (11, 3), (13, 4)],
)
def test__quarter_residue(p: int, expected: int):
    """
    Test that ``x/p`` lies strictly between 1/4 and 1/2.
    """

    assert expected == dtw.quarter_residue(p)
    assert F(1, 4) < F(expected, p) < F(1, 2)


def test__four_query_plan():
    """
    Test that the big-alphabet query is increasing with pairwise coprime
    denominators, and mirrored.
    """

    plan = dtw.four_query_plan(3)
    q = plan.queries[2]

    assert ((0,), (1,)) == plan.queries[:2]
    assert (F(2, 7), F(1, 3), F(2, 5)) == q
    assert tuple(1 - symbol for symbol in q) == plan.queries[3]
    assert all(
        math.gcd(x.denominator, y.denominator) == 1
        for i, x in enumerate(q)
        for y in q[i + 1 :]
    )


def test__build_isomorphic_matching():
    """
    Test that the first 0 absorbs the surplus query characters.
    """

    matching = dtw.build_isomorphic_matching(parse("10"), 1, 4)

    assert ((1, 1), (2, 2), (3, 2), (4, 2)) == matching.edges
    with pytest.raises(DistanceDomainError):
        dtw.build_isomorphic_matching(parse("000"), 1, 4)


def test__build_isomorphic_matching__optimal():
    """
    Test that the isomorphic matching is optimal for every two-extra query
    and every input with both characters.
    """

    n = 6
    a, b = dtw.DEFAULT_A, dtw.DEFAULT_B
    for s in sequences.binary_sequences(n, min_length=2):
        if 0 not in s or 1 not in s:
            continue
        for i in range(1, n + 1):
            q = (a,) * (n - i) + (b,) * i
            matching = dtw.build_isomorphic_matching(s, i, n)

            assert distances.dtw_distance(q, s) == distances.matching_cost(
                matching, q, s
            )


def test__shift_matching():
    """
    Test that a shift slides the edges between the two 0s one place right.
    """

    s = parse("0100")
    matching = dtw.build_isomorphic_matching(s, 2, 5)

    assert ((1, 1), (2, 1), (3, 2), (4, 3), (5, 4)) == matching.edges
    assert [(1, 3), (1, 4)] == dtw.shift_candidates(matching, s)

    shifted = dtw.shift_matching(matching, s, 1, 3)
    shifted.validate(5, 4)

    assert ((1, 1), (2, 2), (3, 3), (4, 3), (5, 4)) == shifted.edges
    with pytest.raises(DistanceDomainError):
        dtw.shift_matching(matching, s, 2, 3)


def test__shift_candidates__degree():
    """
    Test that shifting needs every query character to have degree 1.
    """

    with pytest.raises(DistanceDomainError):
        dtw.shift_candidates(Matching(edges=((1, 1), (1, 2))), parse("00"))


def test__adaptive_recover():
    """
    Test a single recovery with the ``1/2`` character.
    """

    session = OracleSession(
        hidden=parse("110100"),
        distance_kind=DistanceKind.DTW,
        n=8,
    )

    assert parse("110100") == dtw.adaptive_recover(session)
    assert 7 == session.query_count


@pytest.mark.parametrize(
    "strategy_id, n",
    [
        ("dtw.adaptive.half", 7),
        ("dtw.nonadaptive.equiv2n", 5),
        ("dtw.nonadaptive.oneextra", 5),
        ("dtw.nonadaptive.twoextra", 8),
        ("dtw.nonadaptive.fourquery", 7),
    ],
)
def test__dtw_strategies__exhaustive(strategy_id: str, n: int):
    """
    Test that every DTW strategy recovers every non-empty input up to
    length ``n`` within its bound.
    """

    strategy = get_strategy(strategy_id)
    outcomes = list(run_batch(strategy, n, strategy.inputs(n)))

    assert 2 ** (n + 1) - 2 == len(outcomes)
    assert all(outcome.ok for outcome in outcomes)


def test__two_extra__scaled():
    """
    Test that a scaled residue rule recovers the same inputs.
    """

    config = Configuration.from_default().with_options(two_extra_scale=2)
    strategy = get_strategy("dtw.nonadaptive.twoextra", config)

    assert all(outcome.ok for outcome in run_batch(strategy, 6, strategy.inputs(6)))


def test__four_query__answer_denominators():
    """
    Test that the answers to the big-alphabet queries have the product of
    the primes as their denominator whenever the input has both characters.
    """

    n = 5
    plan = dtw.four_query_plan(n)
    product = math.prod(plan.params["primes"])
    for s in sequences.binary_sequences(n, min_length=2):
        if 0 not in s or 1 not in s:
            continue
        for q in plan.queries[2:]:
            assert product == F(distances.dtw_distance(s, q).value).denominator
