"""
Unit tests for the ``seqrecover.recovery.edit`` module.
"""

import pytest

from seqrecover.core import sequences
from seqrecover.core.distances import DistanceKind
from seqrecover.core.exceptions import AdversarialOracleError
from seqrecover.core.oracle import Mode, OracleSession
from seqrecover.core.sequences import WILDCARD
from seqrecover.core.strategies import get_strategy, run_batch
from seqrecover.recovery import edit

EDIT_STRATEGIES = [
    "edit.adaptive.runs",
    "edit.adaptive.runs.linear",
    "edit.adaptive.unit",
    "edit.nonadaptive.wildcard",
    "edit.nonadaptive.binary",
]


def test__unit_query():
    """
    Test that the unit query has a single 1 at the given position.
    """

    assert (0, 1, 0, 0) == edit.unit_query(4, 2)
    assert (1,) == edit.unit_query(1, 1)


@pytest.mark.parametrize(
    "n, run_count, expected",
    [
        (10, 0, 7),
        (10, 1, 16),
        (10, 2, 21),
        (8, 8, 14),
    ],
)
def test__runs_bound(n: int, run_count: int, expected: int):
    """
    Test the query bound of the adaptive runs strategy.
    """

    assert expected == edit.runs_bound(n, run_count)


def test__wildcard_plan():
    """
    Test that the wildcard plan is φ followed by ``1^j W^(n-j)``.
    """

    plan = edit.wildcard_plan(3)

    assert edit.EditPlanVariant.WILDCARD_NON_ADAPTIVE == plan.variant
    assert (
        (),
        (1, WILDCARD, WILDCARD),
        (1, 1, WILDCARD),
        (1, 1, 1),
    ) == plan.queries


def test__wildcard_decode():
    """
    Test that the wildcard answers are decoded by their differences.
    """

    # s = 101 and n = 4: the 1-counts of the prefixes are 1, 1, 2, 2
    assert (1, 0, 1) == edit.wildcard_decode(4, [3, 3, 3, 2, 2])
    assert () == edit.wildcard_decode(4, [0, 4, 4, 4, 4])


def test__wildcard_decode__adversarial():
    """
    Test that impossible answers are reported.
    """

    with pytest.raises(AdversarialOracleError):
        edit.wildcard_decode(2, [2, 1, 3])
    with pytest.raises(AdversarialOracleError):
        edit.wildcard_decode(2, [3, 2, 2])
    with pytest.raises(ValueError):
        edit.wildcard_decode(2, [0])


def test__binary_nonadaptive_plan():
    """
    Test that the binary plan has ``(n² + 3n) / 2`` queries of length at
    most ``n``.
    """

    for n in range(1, 8):
        queries = edit.binary_nonadaptive_plan(n).queries

        assert (n * n + 3 * n) // 2 == len(queries)
        assert max(len(q) for q in queries) == n


def test__binary_nonadaptive_decode__adversarial():
    """
    Test that answers no input can produce are reported.
    """

    plan = edit.binary_nonadaptive_plan(2).queries

    with pytest.raises(AdversarialOracleError):
        edit.binary_nonadaptive_decode(2, [0] * len(plan))


def test__adaptive_runs_recover():
    """
    Test a single recovery through the runs strategy.
    """

    session = OracleSession(
        hidden=sequences.parse("0010111"),
        distance_kind=DistanceKind.EDIT,
        n=8,
    )

    assert sequences.parse("0010111") == edit.adaptive_runs_recover(session)
    assert session.query_count <= edit.runs_bound(8, 4)


def test__adaptive_runs_recover__lying_length():
    """
    Test that a length above ``n`` is reported.
    """

    session = OracleSession(
        hidden=sequences.parse("01"),
        distance_kind=DistanceKind.EDIT,
        n=2,
    )
    session.n = 1

    with pytest.raises(AdversarialOracleError):
        edit.adaptive_runs_recover(session)


@pytest.mark.parametrize(
    "hidden, expected_queries",
    [
        ("0110", 6),
        ("1", 3),
        ("", 1),
    ],
)
def test__adaptive_unit_recover(hidden: str, expected_queries: int):
    """
    Test that the unit strategy asks the length, the all-0 query and one
    unit query per position.
    """

    session = OracleSession(
        hidden=sequences.parse(hidden),
        distance_kind=DistanceKind.EDIT,
        n=6,
    )

    assert sequences.parse(hidden) == edit.adaptive_unit_recover(session)
    assert expected_queries == session.query_count


@pytest.mark.parametrize("strategy_id", EDIT_STRATEGIES)
def test__edit_strategies__exhaustive(strategy_id: str):
    """
    Test that every edit strategy recovers every input up to length 7 within
    its bound, and that non-adaptive strategies ask exactly their plan.
    """

    n = 7
    strategy = get_strategy(strategy_id)
    outcomes = list(run_batch(strategy, n, strategy.inputs(n)))

    assert 2**8 - 1 == len(outcomes)
    assert all(outcome.correct for outcome in outcomes)
    assert all(outcome.report.bound_ok for outcome in outcomes)
    if strategy.mode is Mode.NON_ADAPTIVE:
        assert all(
            outcome.report.queries_used == outcome.report.bound
            for outcome in outcomes
        )


def test__edit_strategies__query_lengths():
    """
    Test that the edit strategies never ask a query longer than ``n``.
    """

    n = 5
    for strategy_id in EDIT_STRATEGIES:
        strategy = get_strategy(strategy_id)
        for hidden in strategy.inputs(n):
            session = strategy.open_session(hidden, n)
            strategy.run_session(session, hidden)

            assert all(len(entry.query) <= n for entry in session.transcript)
