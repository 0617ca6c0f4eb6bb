"""
Brute-force checks of indistinguishability, lower-bound witnesses and the
embedding of inputs into answer vectors.

The scans walk the trie of binary queries one character at a time and keep
a single dynamic-programming column per input, so extending a query by one
character costs ``O(len(input))`` rather than a full distance computation.
Every result only holds "up to query length L"; the length is part of every
report.
"""

from __future__ import annotations

import concurrent.futures
import fractions
import functools
import hashlib
import itertools
import logging
import math
from collections.abc import Iterable, Iterator

from seqrecover.core import distances, mss, sequences
from seqrecover.core.distances import INF, DistanceKind, Number
from seqrecover.core.sequences import Sequence, Symbol

logger = logging.getLogger("lab")

BINARY: tuple[Symbol, ...] = (0, 1)
PREFIX_DEPTH = 4

type Column = tuple[int | float, ...]


class ColumnScanner:
    """
    The dynamic-programming column of one input against a growing query.

    Numeric symbols are scaled to integers by a common ``scale`` so that the
    columns of different inputs stay comparable.
    """

    def __init__(self, kind: DistanceKind, s: Sequence, scale: int = 1) -> None:
        self.kind = DistanceKind(kind)
        self.s = s
        self.scale = scale
        if self.kind is DistanceKind.EDIT:
            self.symbols = s
        else:
            self.symbols = tuple(
                (fractions.Fraction(symbol) * scale).numerator for symbol in s
            )

    def start(self) -> Column:
        if self.kind is DistanceKind.EDIT:
            return tuple(range(len(self.s) + 1))
        return (0,) + (INF,) * len(self.s)

    def step(self, column: Column, symbol: Symbol) -> Column:
        if self.kind is DistanceKind.EDIT:
            current = [column[0] + 1]
            for j, own in enumerate(self.symbols, start=1):
                current.append(
                    min(column[j] + 1, current[j - 1] + 1, column[j - 1] + (own != symbol))
                )
            return tuple(current)

        value = (fractions.Fraction(symbol) * self.scale).numerator
        current = [INF]
        for j, own in enumerate(self.symbols, start=1):
            best = min(column[j], column[j - 1], current[j - 1])
            if self.kind is DistanceKind.DTW:
                current.append(abs(value - own) + best)
            else:
                current.append(max(abs(value - own), best))
        return tuple(current)


def _common_scale(symbols: Iterable[Symbol]) -> int:
    return math.lcm(
        *(
            fractions.Fraction(symbol).denominator
            for symbol in symbols
            if not isinstance(symbol, sequences.Special)
        )
    )


def _min_query_length(kind: DistanceKind) -> int:
    return 0 if kind is DistanceKind.EDIT else 1


def brute_distinguish(
    s: Sequence,
    s2: Sequence,
    distance_kind: DistanceKind,
    max_query_len: int,
    alphabet: tuple[Symbol, ...] = BINARY,
) -> Sequence | None:
    """
    The first query, shortest first and lexicographically within a length,
    whose answers for ``s`` and ``s2`` differ.

    :param s: An input sequence.
    :param s2: Another input sequence.
    :param distance_kind: The distance the queries are answered with.
    :param max_query_len: The longest query to try.
    :param alphabet: The query symbols, in the order to try them.

    :return: The first distinguishing query, or ``None`` if every query up
        to ``max_query_len`` gets the same answer for both.
    """

    kind = DistanceKind(distance_kind)
    scale = _common_scale((*s, *s2, *alphabet))
    scanners = (ColumnScanner(kind, s, scale), ColumnScanner(kind, s2, scale))
    if _min_query_length(kind) == 0 and len(s) != len(s2):
        return ()

    frontier: list[tuple[Sequence, Column, Column]] = [
        ((), scanners[0].start(), scanners[1].start())
    ]
    for _ in range(max_query_len):
        next_frontier = []
        for q, column, column2 in frontier:
            for symbol in alphabet:
                child = (
                    (*q, symbol),
                    scanners[0].step(column, symbol),
                    scanners[1].step(column2, symbol),
                )
                if child[1][-1] != child[2][-1]:
                    return child[0]
                next_frontier.append(child)
        frontier = next_frontier

    return None


def _walk(
    scanners: list[ColumnScanner],
    prefix: Sequence,
    max_query_len: int,
) -> Iterator[tuple[Sequence, list[int | float]]]:
    """
    Yield every query extending ``prefix`` up to ``max_query_len``, in
    depth-first order, with the answers of every input.
    """

    columns = [scanner.start() for scanner in scanners]
    for symbol in prefix:
        columns = [
            scanner.step(column, symbol)
            for scanner, column in zip(scanners, columns, strict=True)
        ]

    stack = [(prefix, columns)]
    while stack:
        q, columns = stack.pop()
        yield q, [column[-1] for column in columns]
        if len(q) < max_query_len:
            for symbol in reversed(BINARY):
                stack.append(
                    (
                        (*q, symbol),
                        [
                            scanner.step(column, symbol)
                            for scanner, column in zip(
                                scanners, columns, strict=True
                            )
                        ],
                    )
                )


def _subtree_digests(
    kind: DistanceKind,
    inputs: list[Sequence],
    prefix: Sequence,
    max_query_len: int,
) -> list[bytes]:
    """
    One blake2b digest per input of its answers to every query under
    ``prefix``.
    """

    scanners = [ColumnScanner(kind, s) for s in inputs]
    hashers = [hashlib.blake2b(digest_size=16) for _ in inputs]
    for _, answers in _walk(scanners, prefix, max_query_len):
        for hasher, answer in zip(hashers, answers, strict=True):
            hasher.update(f"{answer};".encode())

    return [hasher.digest() for hasher in hashers]


def signatures(
    inputs: list[Sequence],
    distance_kind: DistanceKind,
    max_query_len: int,
    workers: int = 1,
) -> list[bytes]:
    """
    A digest per input of its answers to every binary query up to
    ``max_query_len``.

    Queries shorter than the prefix depth are answered here; the subtree
    under each prefix goes to a worker, and the per-prefix digests are
    merged in prefix order.
    """

    kind = DistanceKind(distance_kind)
    depth = min(PREFIX_DEPTH, max_query_len)
    scanners = [ColumnScanner(kind, s) for s in inputs]

    head = [hashlib.blake2b(digest_size=16) for _ in inputs]
    for length in range(_min_query_length(kind), depth):
        for q in itertools.product(BINARY, repeat=length):
            for hasher, scanner in zip(head, scanners, strict=True):
                column = scanner.start()
                for symbol in q:
                    column = scanner.step(column, symbol)
                hasher.update(f"{column[-1]};".encode())

    prefixes = list(itertools.product(BINARY, repeat=depth))
    scan = functools.partial(
        _subtree_digests, kind, inputs, max_query_len=max_query_len
    )
    logger.info(
        f"Scanning {len(inputs)} inputs against {kind} queries up to length"
        f" {max_query_len} with {workers} worker(s)"
    )
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            subtrees = list(pool.map(scan, prefixes))
    else:
        subtrees = [scan(prefix) for prefix in prefixes]

    merged = []
    for index, hasher in enumerate(head):
        for digests in subtrees:
            hasher.update(digests[index])
        merged.append(hasher.digest())

    return merged


def canonical_key(s: Sequence) -> tuple[int, Sequence]:
    return len(s), s


def group_by(inputs: list[Sequence], keys: list) -> list[tuple[Sequence, ...]]:
    """
    Group inputs with equal keys, each block in canonical order and the
    blocks ordered by their first member.
    """

    blocks: dict = {}
    for s, key in zip(inputs, keys, strict=True):
        blocks.setdefault(key, []).append(s)

    return sorted(
        (tuple(sorted(block, key=canonical_key)) for block in blocks.values()),
        key=lambda block: canonical_key(block[0]),
    )


def partition_inputs(n: int, distance_kind: DistanceKind) -> list[Sequence]:
    kind = DistanceKind(distance_kind)
    return list(sequences.binary_sequences(n, _min_query_length(kind)))


def class_partition(
    n: int,
    distance_kind: DistanceKind,
    max_query_len: int,
    workers: int = 1,
) -> list[tuple[Sequence, ...]]:
    """
    Group every input of length at most ``n`` by its answers to every
    binary query up to ``max_query_len``.
    """

    inputs = partition_inputs(n, distance_kind)
    return group_by(inputs, signatures(inputs, distance_kind, max_query_len, workers))


def embed(
    s: Sequence,
    plan: list[Sequence],
    distance_kind: DistanceKind,
    p: int | float = 1,
) -> list[Number]:
    """
    The vector of answers of ``s`` to every query of ``plan``.
    """

    return [distances.distance(distance_kind, s, q, p) for q in plan]


def lipschitz_check(
    plan: list[Sequence],
    distance_kind: DistanceKind,
    pairs: Iterable[tuple[Sequence, Sequence]],
) -> tuple[Sequence, Sequence] | None:
    """
    Check ``‖φ(s) − φ(s')‖₂ ≤ √m · d(s, s')`` for a metric distance, on
    squares so that the arithmetic stays exact.

    :return: The first pair breaking the bound, or ``None``.
    """

    m = len(plan)
    for s, s2 in pairs:
        gap = sum(
            (fractions.Fraction(a) - fractions.Fraction(b)) ** 2
            for a, b in zip(
                embed(s, plan, distance_kind),
                embed(s2, plan, distance_kind),
                strict=True,
            )
        )
        if gap > m * fractions.Fraction(distances.distance(distance_kind, s, s2)) ** 2:
            return s, s2

    return None


def lowerbound_pair(c: int, cap: int | None = None) -> tuple[Sequence, Sequence]:
    """
    Two inputs with ``2c + 5`` runs that only queries with between ``2c``
    and ``2c + 6`` runs tell apart.

    :param c: The number of trailing ``0³1³`` blocks, at least 1.
    :param cap: The longest input allowed, if any.

    :return: ``01³01³(0³1³)^c 0`` and ``01³0²1³0²1³(0³1³)^(c-1) 0``.
    """

    if c < 1:
        raise ValueError(f"c must be at least 1, got {c}")
    if cap is not None and 6 * c + 9 > cap:
        raise ValueError(f"The pair has length {6 * c + 9}, over the cap of {cap}")

    ones, block = (1,) * 3, (0,) * 3 + (1,) * 3
    s = (0, *ones, 0, *ones, *block * c, 0)
    s2 = (0, *ones, 0, 0, *ones, 0, 0, *ones, *block * (c - 1), 0)
    return s, s2


def lowerbound_query(c: int) -> Sequence:
    """
    ``0(10)^c 10``, which is at DTW distance 1 from the first sequence of
    the lower-bound pair and 2 from the second.
    """

    return (0, *(1, 0) * c, 1, 0)


def runs_window_violation(c: int, max_query_len: int) -> Sequence | None:
    """
    The first binary query up to ``max_query_len``, in depth-first order,
    that tells the lower-bound pair apart but has a run count outside
    ``[2c, 2c + 6]``.
    """

    s, s2 = lowerbound_pair(c)
    scanners = [
        ColumnScanner(DistanceKind.DTW, s),
        ColumnScanner(DistanceKind.DTW, s2),
    ]
    for q, (answer, answer2) in _walk(scanners, (), max_query_len):
        if answer != answer2 and not 2 * c <= sequences.run_count(q) <= 2 * c + 6:
            return q

    return None


def verify_runs_window(c: int, max_query_len: int) -> bool:
    return runs_window_violation(c, max_query_len) is None


def mss_pair(a: int, b: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    ``(3^a, 1, 3, 3, 3^b)`` and ``(3^a, 2, 3, 2, 3^b)``.
    """

    return (3,) * a + (1, 3, 3) + (3,) * b, (3,) * a + (2, 3, 2) + (3,) * b


def verify_mss_pair(a: int, b: int) -> bool:
    """
    Whether the MSS pair differs when picking one value and agrees when
    picking any ``x`` in ``2..(a + b + 4) // 2``.
    """

    values, values2 = mss_pair(a, b)

    def differ(x: int) -> bool:
        return mss.mss_solve(mss.MssInstance(values=values, r=x)) != mss.mss_solve(
            mss.MssInstance(values=values2, r=x)
        )

    return differ(1) and not any(
        differ(x) for x in range(2, (a + b + 4) // 2 + 1)
    )
