"""
Exact reference implementations of the edit, (p-)DTW and Fréchet distances.

All DTW and Fréchet arithmetic is exact. The symbols of both operands are
scaled to integers by the lcm of their denominators before running the
dynamic programme, and the result is scaled back into a ``Fraction``.

Matching indices are 1-based: an edge ``(i, j)`` pairs ``x[i]`` of the query
with ``y[j]`` of the input, so every DTW matching contains ``(1, 1)`` and
``(len(x), len(y))``.
"""

from __future__ import annotations

import dataclasses
import enum
import fractions
import itertools
import math

from seqrecover.core import sequences
from seqrecover.core.exceptions import (
    DistanceDomainError,
    InvalidMatchingError,
    UnsupportedAlphabetError,
)
from seqrecover.core.sequences import Sequence

INF = math.inf

type Number = int | fractions.Fraction


class DistanceKind(enum.StrEnum):
    EDIT = "edit"
    DTW = "dtw"
    FRECHET = "frechet"


def as_number(value: fractions.Fraction | int) -> Number:
    """
    Collapse integral fractions to ``int`` for display and hashing.
    """

    if isinstance(value, fractions.Fraction) and value.denominator == 1:
        return value.numerator
    return value


def format_number(value: Number) -> str:
    return str(as_number(value))


def _validate_p(p: int | float) -> None:
    if p == INF:
        return
    if not isinstance(p, int) or isinstance(p, bool) or p < 1:
        raise ValueError(f"p must be a positive integer or INF, got {p!r}")


@dataclasses.dataclass(frozen=True)
class PDtwValue:
    """
    The aggregated cost of an optimal p-DTW matching.

    For finite ``p`` this is the *sum of p-th powers* of the edge costs, not
    its p-th root: the root is usually irrational and taking it does not
    change which matching is optimal. For ``p = INF`` it is the largest
    edge cost, which is the discrete Fréchet distance.
    """

    p: int | float
    aggregated_cost: fractions.Fraction

    def __post_init__(self) -> None:
        _validate_p(self.p)
        if self.aggregated_cost < 0:
            raise ValueError("The aggregated cost cannot be negative")

    @property
    def value(self) -> Number:
        return as_number(self.aggregated_cost)


@dataclasses.dataclass(frozen=True)
class Matching:
    """
    A set of 1-based ``(query index, input index)`` edges, kept sorted.
    """

    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(sorted(set(self.edges))))

    def validate(self, query_length: int, input_length: int) -> None:
        """
        Raise ``InvalidMatchingError`` unless the matching covers every index
        of both sequences, contains both anchors and is jointly monotone.
        """

        if not self.edges:
            raise InvalidMatchingError("A matching needs at least one edge")
        if self.edges[0] != (1, 1):
            raise InvalidMatchingError("The edge (1, 1) is missing")
        if self.edges[-1] != (query_length, input_length):
            raise InvalidMatchingError(
                f"The edge ({query_length}, {input_length}) is missing"
            )

        query_indexes = {i for i, _ in self.edges}
        input_indexes = {j for _, j in self.edges}
        if query_indexes != set(range(1, query_length + 1)):
            raise InvalidMatchingError("Not every query index is matched")
        if input_indexes != set(range(1, input_length + 1)):
            raise InvalidMatchingError("Not every input index is matched")

        # Sorted by query index, so monotone iff input indexes never fall
        for (_, before), (_, after) in itertools.pairwise(self.edges):
            if after < before:
                raise InvalidMatchingError(
                    f"Edges cross: input index {after} follows {before}"
                )

    def query_degree(self, i: int) -> int:
        return sum(1 for k, _ in self.edges if k == i)

    def input_degree(self, j: int) -> int:
        return sum(1 for _, k in self.edges if k == j)


def _check_edit_alphabet(*operands: Sequence) -> None:
    for s in operands:
        if any(isinstance(symbol, fractions.Fraction) for symbol in s):
            raise UnsupportedAlphabetError(
                "Rational symbols are not allowed under edit distance"
            )


def _check_numeric_operands(*operands: Sequence) -> None:
    for s in operands:
        if not s:
            raise DistanceDomainError(
                "Warping is undefined for an empty sequence"
            )
        if any(isinstance(symbol, sequences.Special) for symbol in s):
            raise UnsupportedAlphabetError(
                "The wildcard is only allowed under edit distance"
            )


def edit_distance(x: Sequence, y: Sequence) -> int:
    """
    The Levenshtein distance with unit insertion, deletion and substitution
    costs.
    """

    _check_edit_alphabet(x, y)
    previous = list(range(len(y) + 1))
    for i, x_symbol in enumerate(x, start=1):
        current = [i]
        for j, y_symbol in enumerate(y, start=1):
            current.append(
                min(
                    previous[j] + 1,
                    current[j - 1] + 1,
                    previous[j - 1] + (x_symbol != y_symbol),
                )
            )
        previous = current

    return previous[-1]


def _scaled(x: Sequence, y: Sequence) -> tuple[list[int], list[int], int]:
    scale = math.lcm(*(symbol.denominator for symbol in (*x, *y)))
    return (
        [(symbol * scale).numerator for symbol in x],
        [(symbol * scale).numerator for symbol in y],
        scale,
    )


def _cost_table(xs: list[int], ys: list[int], p: int | float) -> list[list]:
    """
    The (len x + 1) × (len y + 1) table of optimal prefix costs, on the
    scaled integer symbols. Row and column 0 are the unreachable border.
    """

    table: list[list] = [[INF] * (len(ys) + 1) for _ in range(len(xs) + 1)]
    table[0][0] = 0
    for i, a in enumerate(xs, start=1):
        row, above = table[i], table[i - 1]
        for j, b in enumerate(ys, start=1):
            best = min(above[j], above[j - 1], row[j - 1])
            if p == INF:
                row[j] = max(abs(a - b), best)
            else:
                row[j] = abs(a - b) ** p + best

    return table


def _unscale(raw: int, scale: int, p: int | float) -> fractions.Fraction:
    return fractions.Fraction(raw, scale if p == INF else scale**p)


def dtw_distance(x: Sequence, y: Sequence, p: int | float = 1) -> PDtwValue:
    """
    The exact p-DTW distance between two non-empty sequences.

    ``p = 1`` is the plain DTW distance and ``p = INF`` the discrete Fréchet
    distance.
    """

    _validate_p(p)
    _check_numeric_operands(x, y)
    xs, ys, scale = _scaled(x, y)
    raw = _cost_table(xs, ys, p)[-1][-1]

    return PDtwValue(p=p, aggregated_cost=_unscale(raw, scale, p))


def frechet_distance(x: Sequence, y: Sequence) -> fractions.Fraction:
    return dtw_distance(x, y, INF).aggregated_cost


def optimal_matching(
    x: Sequence,
    y: Sequence,
    p: int | float = 1,
) -> tuple[Matching, PDtwValue]:
    """
    Backtrace one optimal matching from the cost table.

    Ties are broken deterministically: walking back from
    ``(len x, len y)``, the predecessor that only moves the query index is
    preferred, then the diagonal, then the one that only moves the input
    index.
    """

    _validate_p(p)
    _check_numeric_operands(x, y)
    xs, ys, scale = _scaled(x, y)
    table = _cost_table(xs, ys, p)

    i, j = len(xs), len(ys)
    edges = [(i, j)]
    while (i, j) != (1, 1):
        i, j = min(
            ((i - 1, j), (i - 1, j - 1), (i, j - 1)),
            key=lambda cell: table[cell[0]][cell[1]],
        )
        edges.append((i, j))

    return (
        Matching(edges=tuple(edges)),
        PDtwValue(p=p, aggregated_cost=_unscale(table[-1][-1], scale, p)),
    )


def matching_cost(
    matching: Matching,
    x: Sequence,
    y: Sequence,
    p: int | float = 1,
) -> PDtwValue:
    """
    The aggregated edge cost of a given matching between query ``x`` and
    input ``y``.
    """

    _validate_p(p)
    _check_numeric_operands(x, y)
    matching.validate(len(x), len(y))
    costs = [
        abs(fractions.Fraction(x[i - 1]) - fractions.Fraction(y[j - 1]))
        for i, j in matching.edges
    ]
    if p == INF:
        return PDtwValue(p=p, aggregated_cost=max(costs))
    return PDtwValue(p=p, aggregated_cost=sum(cost**p for cost in costs))


def distance(
    kind: DistanceKind,
    x: Sequence,
    y: Sequence,
    p: int | float = 1,
) -> Number:
    """
    Dispatch to the distance of the given kind. ``p`` only applies to DTW.
    """

    match kind:
        case DistanceKind.EDIT:
            return edit_distance(x, y)
        case DistanceKind.DTW:
            return dtw_distance(x, y, p).value
        case DistanceKind.FRECHET:
            return as_number(frechet_distance(x, y))

    raise ValueError(f"Unknown distance kind {kind!r}")
