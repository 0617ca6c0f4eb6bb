"""
Connect the various subpackages throughout the project to couple up the
objects.
"""

from __future__ import annotations

import json
import logging
import logging.config
import pathlib
import random
from collections.abc import Iterator
from typing import Any

import yaml

# Importing the recovery package registers the strategies
from seqrecover import recovery, reports, utils  # noqa: F401
from seqrecover.core import distances, sequences
from seqrecover.core.configuration import Configuration
from seqrecover.core.distances import DistanceKind, Number
from seqrecover.core.exceptions import DistanceDomainError
from seqrecover.core.oracle import RecoveryReport, ReplaySession
from seqrecover.core.sequences import Sequence
from seqrecover.core.strategies import (
    RecoveryOutcome,
    Strategy,
    get_strategy,
    run_batch,
)
from seqrecover.lab import SuiteReport, get_suite

LOG_FILE = utils.ROOT / "logs" / "seqrecover.log"


def configure_logging() -> None:
    """
    Log to stderr and to a rotating file under ``logs/``.
    """

    LOG_FILE.parent.mkdir(exist_ok=True)
    with open(utils.SEQRECOVER / "logger.yaml") as f:
        config = yaml.safe_load(f.read())
    config["handlers"]["file"]["filename"] = str(LOG_FILE)
    logging.config.dictConfig(config)

    logging.debug(f"Setting root directory to {utils.ROOT}")
    logging.debug(f"Setting source directory to {utils.SEQRECOVER}")


def parse_p(text: str) -> int | float:
    return distances.INF if text == "inf" else int(text)


def oracle(distance: str, x: str, y: str, p: str = "1") -> Number:
    """
    The exact distance between two parsed sequences. Under DTW this is the
    aggregated cost for the given ``p``.
    """

    kind = DistanceKind(distance)
    left, right = sequences.parse(x), sequences.parse(y)
    if kind is DistanceKind.DTW:
        return distances.dtw_distance(left, right, parse_p(p)).value
    return distances.distance(kind, left, right)


def _check_n(n: int, configuration: Configuration) -> None:
    if not 1 <= n <= configuration.max_n:
        raise ValueError(f"n must be between 1 and {configuration.max_n}, got {n}")


def random_inputs(
    strategy: Strategy,
    n: int,
    seed: int,
    count: int,
) -> list[Sequence]:
    rng = random.Random(seed)
    return [
        tuple(
            rng.randint(0, 1)
            for _ in range(rng.randint(strategy.min_input_length, n))
        )
        for _ in range(count)
    ]


def select_inputs(
    strategy: Strategy,
    n: int,
    hidden: str | None = None,
    random_spec: tuple[int, int] | None = None,
    exhaustive: bool = False,
) -> list[Sequence]:
    """
    The hidden inputs to run: one given input, a seeded random sample, or
    every supported input.
    """

    if hidden is not None:
        s = sequences.parse(hidden)
        if len(s) < strategy.min_input_length:
            raise DistanceDomainError(
                f"{strategy.strategy_id} needs inputs of length at least"
                f" {strategy.min_input_length}"
            )
        return [s]
    if random_spec is not None:
        return random_inputs(strategy, n, *random_spec)
    if exhaustive:
        return list(strategy.inputs(n))

    raise ValueError("Choose a hidden input, a random sample or exhaustive")


def recover(
    strategy_id: str,
    n: int,
    configuration: Configuration,
    hidden: str | None = None,
    random_spec: tuple[int, int] | None = None,
    exhaustive: bool = False,
    include_transcript: bool = False,
) -> Iterator[RecoveryOutcome]:
    _check_n(n, configuration)
    strategy = get_strategy(strategy_id, configuration)
    inputs = select_inputs(strategy, n, hidden, random_spec, exhaustive)

    logging.info(f"Running {strategy_id} against {len(inputs)} input(s), n={n}")
    yield from run_batch(
        strategy,
        n,
        inputs,
        workers=configuration.workers,
        include_transcript=include_transcript,
    )


def replay(
    strategy_id: str,
    transcript: pathlib.Path,
    configuration: Configuration,
) -> RecoveryReport:
    """
    Run a strategy against a recorded transcript, failing if it asks
    anything other than the recorded queries.
    """

    strategy = get_strategy(strategy_id, configuration)
    session = ReplaySession.from_json(transcript.read_text())
    return strategy.replay(session)


def table(
    n: int,
    configuration: Configuration,
    pretty: bool = False,
) -> list[dict[str, Any]]:
    """
    Run every strategy against every supported input up to ``n`` and
    summarise the query counts against the declared bounds.
    """

    _check_n(n, configuration)
    results = []
    for strategy_id in sorted(Strategy.strategies):
        strategy = get_strategy(strategy_id, configuration)
        logging.info(f"Tabulating {strategy_id} for n={n}")
        outcomes = list(
            run_batch(strategy, n, strategy.inputs(n), configuration.workers)
        )
        results.append((strategy, outcomes))

    return reports.summary(results, pretty=pretty)


def verify(suite_id: str, configuration: Configuration) -> SuiteReport:
    suite = get_suite(suite_id, configuration)
    logging.info(f"Running suite {suite_id}...")
    report = suite.run()
    logging.info(f"Suite {suite_id}: {'pass' if report.result else 'fail'}")
    return report


def to_json_line(data: dict[str, Any], configuration: Configuration) -> str:
    return json.dumps(data | {"config": configuration.to_dict()}, default=str)
