"""
Unit tests for the ``seqrecover.reports.report`` module.
"""

from seqrecover.core.strategies import get_strategy, run_batch
from seqrecover.reports import report


def test__summary():
    """
    Test that the outcomes are aggregated per strategy.
    """

    wildcard = get_strategy("edit.nonadaptive.wildcard")
    descent = get_strategy("cd.frechet")
    results = [
        (wildcard, list(run_batch(wildcard, 3, wildcard.inputs(3)))),
        (descent, list(run_batch(descent, 3, descent.inputs(3)))),
    ]

    records = report.summary(results)

    assert ["edit.nonadaptive.wildcard", "cd.frechet"] == [
        record["strategy"] for record in records
    ]
    assert {
        "strategy": "edit.nonadaptive.wildcard",
        "distance": "edit",
        "mode": "non-adaptive",
        "level": "exact",
        "extra_characters": "1",
        "bound_formula": "n + 1",
        "inputs": 15,
        "max_queries": 4,
        "max_bound": 4,
        "wrong": 0,
        "over_bound": 0,
    } == records[0]
    assert 14 == records[1]["inputs"]
    assert 7 == records[1]["max_bound"]


def test__summary__empty():
    """
    Test that no outcomes give no rows.
    """

    assert [] == report.summary([])
