"""
The summary table of every strategy against every input up to ``n``.
"""

import pathlib
from typing import Any

import duckdb

from seqrecover.core.strategies import RecoveryOutcome, Strategy

HERE = pathlib.Path(__file__).parent
QUERIES = HERE / "queries"

_COLUMNS = {
    "strategy": "varchar",
    "distance": "varchar",
    "mode": "varchar",
    "level": "varchar",
    "extra_characters": "varchar",
    "bound_formula": "varchar",
    "queries_used": "integer",
    "bound": "integer",
    "correct": "boolean",
}


def _row(strategy: Strategy, outcome: RecoveryOutcome) -> tuple:
    return (
        strategy.strategy_id,
        str(strategy.distance_kind),
        str(strategy.mode),
        str(strategy.level),
        str(strategy.extra_characters),
        strategy.bound_formula,
        outcome.report.queries_used,
        outcome.report.bound,
        outcome.correct,
    )


def _query(
    report_name: str,
    rows: list[tuple],
) -> tuple[duckdb.DuckDBPyConnection, duckdb.DuckDBPyRelation]:
    connection = duckdb.connect()
    columns = ", ".join(f"{name} {kind}" for name, kind in _COLUMNS.items())
    connection.execute(f"create table recoveries ({columns})")
    if rows:
        placeholders = ", ".join("?" for _ in _COLUMNS)
        connection.executemany(
            f"insert into recoveries values ({placeholders})", rows
        )

    query = (QUERIES / report_name).with_suffix(".sql").read_text()
    return connection, connection.sql(query)


def summary(
    results: list[tuple[Strategy, list[RecoveryOutcome]]],
    pretty: bool = False,
) -> list[dict[str, Any]]:
    """
    Aggregate the outcomes per strategy: the largest query count against the
    largest declared bound, and the number of wrong or over-bound runs.

    With ``pretty``, the table is also printed.
    """

    rows = [
        _row(strategy, outcome)
        for strategy, outcomes in results
        for outcome in outcomes
    ]
    connection, result = _query("summary", rows)
    if pretty:
        result.show(max_rows=len(result), null_value="")

    names = result.columns
    records = [dict(zip(names, values, strict=True)) for values in result.fetchall()]
    connection.close()
    return records
