"""
The verification suites run by ``seqrecover verify <suite>``.

Each suite is a class whose kebab-case name is its suite id, such as
``MssEquivalence`` for ``mss-equivalence``, and is registered in
``Suite.suites`` when it is defined. A suite returns one ``SuiteReport``,
which records the parameters and the query-length bound it ran with.
"""

from __future__ import annotations

import abc
import dataclasses
import itertools
import logging
import random
from typing import Any, ClassVar

from seqrecover import utils
from seqrecover.core import distances, mss, sequences
from seqrecover.core.configuration import Configuration
from seqrecover.core.distances import DistanceKind
from seqrecover.core.exceptions import UnknownNameError
from seqrecover.core.sequences import WILDCARD, Sequence
from seqrecover.core.strategies import NonAdaptiveStrategy, Strategy, run_batch
from seqrecover.lab import verification
from seqrecover.recovery import dtw, edit, frechet

logger = logging.getLogger("lab")

# The largest n each strategy is checked against exhaustively
STRATEGY_N = {
    "edit.adaptive.runs": 10,
    "edit.adaptive.runs.linear": 10,
    "edit.adaptive.unit": 10,
    "edit.nonadaptive.wildcard": 10,
    "edit.nonadaptive.binary": 8,
    "dtw.adaptive.half": 10,
    "dtw.nonadaptive.equiv2n": 6,
    "dtw.nonadaptive.oneextra": 8,
    "dtw.nonadaptive.twoextra": 12,
    "dtw.nonadaptive.fourquery": 10,
    "frechet.nonadaptive.classes": 10,
    "cd.edit": 8,
    "cd.dtw": 8,
    "cd.frechet": 8,
}


@dataclasses.dataclass(frozen=True)
class SuiteReport:
    claim_id: str
    params: dict[str, Any]
    bound: str
    result: bool
    counterexample: Any = None

    def to_dict(self) -> dict[str, Any]:
        data = {
            "claim_id": self.claim_id,
            "params": self.params,
            "bound": self.bound,
            "result": "pass" if self.result else "fail",
        }
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample
        return data


def _fmt(s: Sequence | None) -> str | None:
    return None if s is None else sequences.format_sequence(s)


def _random_binary(rng: random.Random, min_length: int, max_length: int) -> Sequence:
    return tuple(
        rng.randint(0, 1) for _ in range(rng.randint(min_length, max_length))
    )


class Suite(abc.ABC):
    """
    A brute-force check of one claim.
    """

    suites: ClassVar[dict[str, type[Suite]]] = {}
    name: ClassVar[str]

    def __init_subclass__(cls, **kwargs: Any) -> None:
        super().__init_subclass__(**kwargs)
        cls.name = utils.pascal_to_kebab(cls.__name__)
        logger.debug(f"Adding class {cls.__name__} to `Suite.suites` with key '{cls.name}'")
        Suite.suites[cls.name] = cls

    def __init__(self, configuration: Configuration | None = None) -> None:
        self.configuration = configuration or Configuration.from_default()

    def report(self, **kwargs: Any) -> SuiteReport:
        return SuiteReport(claim_id=self.name, **kwargs)

    @abc.abstractmethod
    def run(self) -> SuiteReport:
        """
        Run the check.
        """


class Witness(Suite):
    """
    ``010110`` and ``011010`` get the same DTW answer to every binary query,
    while ``101`` and ``1011``, at DTW distance 0, are still told apart.
    """

    def run(self) -> SuiteReport:
        length = self.configuration.witness_max_query_length
        separating = verification.brute_distinguish(
            sequences.parse("010110"),
            sequences.parse("011010"),
            DistanceKind.DTW,
            length,
        )
        control = verification.brute_distinguish(
            sequences.parse("101"),
            sequences.parse("1011"),
            DistanceKind.DTW,
            length,
        )
        return self.report(
            params={"pair": ["010110", "011010"], "control": ["101", "1011"]},
            bound=f"binary queries up to length {length}",
            result=separating is None and control is not None,
            counterexample=_fmt(separating),
        )


class MssEquivalence(Suite):
    """
    The MSS reduction agrees with the DTW dynamic programme on every pair of
    short inputs and on random longer pairs.
    """

    def run(self) -> SuiteReport:
        exhaustive = self.configuration.mss_exhaustive_max_length
        inputs = list(sequences.binary_sequences(exhaustive, min_length=1))
        pairs = itertools.product(inputs, repeat=2)

        rng = random.Random(self.configuration.seed)
        longest = self.configuration.mss_random_max_length
        random_pairs = (
            (_random_binary(rng, 1, longest), _random_binary(rng, 1, longest))
            for _ in range(self.configuration.mss_random_pairs)
        )

        for x, y in itertools.chain(pairs, random_pairs):
            if mss.dtw_via_mss(x, y) != distances.dtw_distance(x, y).value:
                logger.error(f"The MSS reduction disagrees on {_fmt(x)}, {_fmt(y)}")
                return self.report(
                    params={"exhaustive_max_length": exhaustive},
                    bound=f"inputs up to length {longest}",
                    result=False,
                    counterexample=[_fmt(x), _fmt(y)],
                )

        return self.report(
            params={
                "exhaustive_max_length": exhaustive,
                "random_pairs": self.configuration.mss_random_pairs,
                "seed": self.configuration.seed,
            },
            bound=f"inputs up to length {longest}",
            result=True,
        )


class MssPair(Suite):
    """
    The MSS values of the lower-bound instances differ only when a single
    value is picked.
    """

    sizes = range(5)

    def run(self) -> SuiteReport:
        failures = [
            [a, b]
            for a, b in itertools.product(self.sizes, repeat=2)
            if not verification.verify_mss_pair(a, b)
        ]
        return self.report(
            params={"a": list(self.sizes), "b": list(self.sizes)},
            bound="all selection counts",
            result=not failures,
            counterexample=failures[0] if failures else None,
        )


class RunsWindow(Suite):
    """
    Every binary query separating the lower-bound pair has a run count in
    ``[2c, 2c + 6]``, and ``0(10)^c 10`` separates it with distances 1 and 2.
    """

    cs = (1, 2)

    def run(self) -> SuiteReport:
        length = self.configuration.runs_window_max_query_length
        for c in self.cs:
            s, s2 = verification.lowerbound_pair(c)
            q = verification.lowerbound_query(c)
            answers = (
                distances.dtw_distance(s, q).value,
                distances.dtw_distance(s2, q).value,
            )
            violation = verification.runs_window_violation(c, length)
            if answers != (1, 2) or violation is not None:
                return self.report(
                    params={"c": c},
                    bound=f"binary queries up to length {length}",
                    result=False,
                    counterexample=_fmt(violation) or _fmt(q),
                )

        return self.report(
            params={"c": list(self.cs)},
            bound=f"binary queries up to length {length}",
            result=True,
        )


class EquivalencePartition(Suite):
    """
    The ``2n`` equivalence queries split the inputs exactly like every
    binary query up to the configured length does.

    The brute-force partition always refines the plan's partition when it
    includes the plan's queries, so only members of the same plan class
    need a brute-force signature.
    """

    def run(self) -> SuiteReport:
        length = self.configuration.partition_max_query_length
        workers = self.configuration.workers
        max_n = self.configuration.partition_max_n
        if length < 3 * max_n - 2:
            raise ValueError(f"Length {length} misses the plan queries for n={max_n}")

        for n in range(1, max_n + 1):
            inputs = verification.partition_inputs(n, DistanceKind.DTW)
            plan_blocks = verification.group_by(
                inputs, [dtw.signature(s, n) for s in inputs]
            )
            members = [s for block in plan_blocks if len(block) > 1 for s in block]
            digests = (
                dict(
                    zip(
                        members,
                        verification.signatures(
                            members, DistanceKind.DTW, length, workers
                        ),
                        strict=True,
                    )
                )
                if members
                else {}
            )
            for block in plan_blocks:
                if len({digests[s] for s in block if s in digests}) > 1:
                    return self.report(
                        params={"n": n},
                        bound=f"binary queries up to length {length}",
                        result=False,
                        counterexample=[_fmt(s) for s in block],
                    )
            logger.info(f"n={n}: {len(plan_blocks)} classes agree")

        return self.report(
            params={"max_n": self.configuration.partition_max_n},
            bound=f"binary queries up to length {length}",
            result=True,
        )


class FrechetClasses(Suite):
    """
    Fréchet distance 0 means equal condensed expressions, and brute force
    finds exactly the ``2n`` alternating classes.
    """

    pair_max_length = 7

    def run(self) -> SuiteReport:
        inputs = list(sequences.binary_sequences(self.pair_max_length, min_length=1))
        for s, s2 in itertools.product(inputs, repeat=2):
            equivalent = distances.frechet_distance(s, s2) == 0
            if equivalent != (sequences.condensed(s) == sequences.condensed(s2)):
                return self.report(
                    params={"pair_max_length": self.pair_max_length},
                    bound="exact",
                    result=False,
                    counterexample=[_fmt(s), _fmt(s2)],
                )

        for n in range(1, self.configuration.partition_max_n + 1):
            length = self.configuration.brute_force_max_query_length(n)
            blocks = verification.class_partition(
                n, DistanceKind.FRECHET, length, self.configuration.workers
            )
            expected = {c.representative for c in frechet.classes(n)}
            found = {sequences.condensed(block[0]) for block in blocks}
            if len(blocks) != 2 * n or found != expected:
                return self.report(
                    params={"n": n},
                    bound=f"binary queries up to length {length}",
                    result=False,
                    counterexample=[[_fmt(s) for s in block] for block in blocks],
                )

        return self.report(
            params={
                "pair_max_length": self.pair_max_length,
                "max_n": self.configuration.partition_max_n,
            },
            bound="binary queries up to length 2n + 4",
            result=True,
        )


class FrechetExtraChars(Suite):
    """
    Random rational queries never separate Fréchet-equivalent inputs.
    """

    max_length = 8

    def run(self) -> SuiteReport:
        rng = random.Random(self.configuration.seed)
        trials = self.configuration.frechet_extra_trials
        for index in range(self.configuration.frechet_extra_pairs):
            s = _random_binary(rng, 1, self.max_length)
            runs = sequences.decompose_runs(s)
            s2 = sequences.RunDecomposition(
                first_char=runs.first_char,
                run_lengths=tuple(rng.randint(1, 3) for _ in runs.run_lengths),
            ).reconstruct()
            if not frechet.extra_chars_useless_check(
                s, s2, trials=trials, seed=self.configuration.seed + index
            ):
                return self.report(
                    params={"trials": trials},
                    bound="sampled rational queries",
                    result=False,
                    counterexample=[_fmt(s), _fmt(s2)],
                )

        return self.report(
            params={
                "pairs": self.configuration.frechet_extra_pairs,
                "trials": trials,
                "seed": self.configuration.seed,
            },
            bound="sampled rational queries",
            result=True,
        )


class MatchingLemmas(Suite):
    """
    The isomorphic matching is optimal for every two-extra query, every
    query character has degree 1 in it, and no shift lowers its cost.
    """

    max_n = 12

    def run(self) -> SuiteReport:
        rng = random.Random(self.configuration.seed)
        a, b = self.configuration.two_extra_a, self.configuration.two_extra_b
        for _ in range(self.configuration.matching_random_triples):
            n = rng.randint(2, self.max_n)
            s = _random_binary(rng, 2, n)
            if 0 not in s or 1 not in s:
                continue

            i = rng.randint(1, n)
            q = (a,) * (n - i) + (b,) * i
            matching = dtw.build_isomorphic_matching(s, i, n)
            cost = distances.matching_cost(matching, q, s)
            optimum = distances.dtw_distance(q, s)
            degrees_ok = all(
                matching.query_degree(j) == 1 for j in range(1, n + 1)
            )
            shifts_ok = all(
                distances.matching_cost(dtw.shift_matching(matching, s, x, y), q, s).aggregated_cost
                >= cost.aggregated_cost
                for x, y in dtw.shift_candidates(matching, s)
            )
            if cost != optimum or not degrees_ok or not shifts_ok:
                return self.report(
                    params={"n": n, "i": i},
                    bound="exact",
                    result=False,
                    counterexample=_fmt(s),
                )

        return self.report(
            params={
                "triples": self.configuration.matching_random_triples,
                "max_n": self.max_n,
                "a": str(a),
                "b": str(b),
                "seed": self.configuration.seed,
            },
            bound="exact",
            result=True,
        )


class WildcardLemma(Suite):
    """
    ``d(s, 1^j W^(n-j))`` is ``n`` minus the number of 1s among the first
    ``j`` characters of ``s``.
    """

    def run(self) -> SuiteReport:
        n = self.configuration.table_n
        for s in sequences.binary_sequences(n):
            for j in range(1, n + 1):
                q = (1,) * j + (WILDCARD,) * (n - j)
                if distances.edit_distance(s, q) != n - s[:j].count(1):
                    return self.report(
                        params={"n": n, "j": j},
                        bound="exact",
                        result=False,
                        counterexample=_fmt(s),
                    )

        return self.report(params={"n": n}, bound="exact", result=True)


class SubsequenceClaim(Suite):
    """
    A query no longer than the input is a subsequence of it exactly when
    their edit distance is the length difference.
    """

    max_length = 7

    def run(self) -> SuiteReport:
        n = self.max_length
        inputs = list(sequences.binary_sequences(n))
        for s, q in itertools.product(inputs, repeat=2):
            if len(q) > len(s):
                continue
            claimed = distances.edit_distance(s, q) == len(s) - len(q)
            if claimed != sequences.is_subsequence(q, s):
                return self.report(
                    params={"n": n},
                    bound="exact",
                    result=False,
                    counterexample=[_fmt(s), _fmt(q)],
                )

        return self.report(params={"n": n}, bound="exact", result=True)


class Embedding(Suite):
    """
    Exact-recovery plans embed inputs injectively, the equivalence plan is
    constant on DTW classes, and metric embeddings are ``√m``-Lipschitz.
    """

    n = 4
    random_pairs = 200

    def run(self) -> SuiteReport:
        plan = list(edit.wildcard_plan(self.n).queries)
        inputs = list(sequences.binary_sequences(self.n))
        vectors = {tuple(verification.embed(s, plan, DistanceKind.EDIT)) for s in inputs}
        injective = len(vectors) == len(inputs)

        equivalence_plan = list(dtw.equivalence_plan(self.n).queries)
        constant = all(
            verification.embed(s, equivalence_plan, DistanceKind.DTW)
            == verification.embed(
                dtw.equivalence_recover(
                    self.n, verification.embed(s, equivalence_plan, DistanceKind.DTW)
                ).canonical,
                equivalence_plan,
                DistanceKind.DTW,
            )
            for s in inputs
            if s
        )

        rng = random.Random(self.configuration.seed)
        edit_pairs = [
            (_random_binary(rng, 0, self.n), _random_binary(rng, 0, self.n))
            for _ in range(self.random_pairs)
        ]
        frechet_pairs = [
            (_random_binary(rng, 1, self.n), _random_binary(rng, 1, self.n))
            for _ in range(self.random_pairs)
        ]
        broken = verification.lipschitz_check(
            plan, DistanceKind.EDIT, edit_pairs
        ) or verification.lipschitz_check(
            frechet.plan(self.n), DistanceKind.FRECHET, frechet_pairs
        )

        return self.report(
            params={"n": self.n, "random_pairs": self.random_pairs},
            bound="exact",
            result=injective and constant and broken is None,
            counterexample=None if broken is None else [_fmt(s) for s in broken],
        )


class Strategies(Suite):
    """
    Every registered strategy recovers every supported input within its
    bound, and every non-adaptive strategy asks exactly its plan.
    """

    def run(self) -> SuiteReport:
        results = {}
        for strategy_id in sorted(Strategy.strategies):
            strategy = Strategy.strategies[strategy_id](self.configuration)
            n = STRATEGY_N.get(strategy_id, self.configuration.table_n)
            logger.info(f"Checking {strategy_id} exhaustively with n={n}")
            for outcome in run_batch(
                strategy, n, strategy.inputs(n), self.configuration.workers
            ):
                exact_count = not isinstance(strategy, NonAdaptiveStrategy) or (
                    outcome.report.queries_used == outcome.report.bound
                )
                if not outcome.ok or not exact_count:
                    return self.report(
                        params={"strategy": strategy_id, "n": n},
                        bound=strategy.bound_formula,
                        result=False,
                        counterexample=outcome.to_dict(),
                    )
            results[strategy_id] = n

        return self.report(params=results, bound="declared bounds", result=True)


def get_suite(name: str, configuration: Configuration | None = None) -> Suite:
    try:
        suite_class = Suite.suites[name]
    except KeyError:
        raise UnknownNameError(
            f"No suite is registered as {name!r}; choose from"
            f" {', '.join(sorted(Suite.suites))}"
        ) from None

    return suite_class(configuration)
