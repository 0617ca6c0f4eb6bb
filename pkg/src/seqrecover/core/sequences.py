"""
Sequences over the binary alphabet and its query-only extensions.

Inputs are always binary. Queries may additionally use a single wildcard
symbol (edit distance) or exact rationals strictly between 0 and 1 (DTW
and Fréchet distances). Sequences are plain tuples so they hash, compare
and slice for free::

    >>> parse("0010111")
    (0, 0, 1, 0, 1, 1, 1)
    >>> format_sequence(condensed(parse("0010111")))
    '0101'
"""

from __future__ import annotations

import dataclasses
import enum
import fractions
import itertools
import math
import re
from collections.abc import Iterable, Iterator

from seqrecover import utils
from seqrecover.core.exceptions import SequenceParseError

_FRACTION_TOKEN = re.compile(r"(\d+)/(\d+)")


class Special(enum.StrEnum):
    """
    Query-only symbols that are not numbers.
    """

    WILDCARD = "W"


class Alphabet(enum.StrEnum):
    """
    The smallest alphabet that a sequence's symbols fit in.
    """

    BINARY = "binary"
    WILDCARD = "wildcard"
    RATIONAL = "rational"
    MIXED = "mixed"


WILDCARD = Special.WILDCARD
HALF = fractions.Fraction(1, 2)

type Symbol = int | fractions.Fraction | Special
type Sequence = tuple[Symbol, ...]

EMPTY: Sequence = ()


def validate_symbol(value: Symbol) -> Symbol:
    """
    Return the normalised symbol, or raise ``ValueError`` if it is not a
    legal symbol of any alphabet.

    Rationals equal to 0 or 1 are normalised to the integers so that
    equality stays structural.
    """

    if isinstance(value, Special):
        return value
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        if value in {0, 1}:
            return value
        raise ValueError(f"Integer symbols must be 0 or 1, got {value}")
    if isinstance(value, fractions.Fraction):
        if value.denominator == 1 and value.numerator in {0, 1}:
            return value.numerator
        if 0 < value < 1:
            return value
        raise ValueError(f"Rational symbols must lie in (0, 1), got {value}")

    raise ValueError(f"Unknown symbol {value!r}")


def sequence(values: Iterable[Symbol]) -> Sequence:
    """
    Build a validated sequence from any iterable of symbols.
    """

    return tuple(validate_symbol(value) for value in values)


def from_bits(bits: str) -> Sequence:
    """
    Build a binary sequence from a string of ``0`` and ``1`` characters.
    """

    return tuple(int(bit) for bit in bits)


def alphabet_of(s: Sequence) -> Alphabet:
    """
    Classify the symbols of a sequence.
    """

    has_wildcard = any(isinstance(symbol, Special) for symbol in s)
    has_rational = any(
        isinstance(symbol, fractions.Fraction) for symbol in s
    )
    if has_wildcard and has_rational:
        return Alphabet.MIXED
    if has_wildcard:
        return Alphabet.WILDCARD
    if has_rational:
        return Alphabet.RATIONAL
    return Alphabet.BINARY


def is_binary(s: Sequence) -> bool:
    return all(symbol in {0, 1} and isinstance(symbol, int) for symbol in s)


def _parse_token(token: str, position: int) -> Symbol:
    if token in {"0", "1"}:
        return int(token)
    if token == Special.WILDCARD.value:
        return WILDCARD

    match = _FRACTION_TOKEN.fullmatch(token)
    if match is None:
        raise SequenceParseError(token, position, "unknown symbol")

    numerator, denominator = (int(group) for group in match.groups())
    if not 0 < numerator < denominator:
        raise SequenceParseError(
            token, position, "fractions must lie strictly between 0 and 1"
        )
    if math.gcd(numerator, denominator) != 1:
        raise SequenceParseError(
            token, position, "fractions must be in lowest terms"
        )

    return fractions.Fraction(numerator, denominator)


def parse(text: str) -> Sequence:
    """
    Parse the text form of a sequence.

    Binary sequences are written as contiguous ``0``/``1`` strings; any
    other sequence is written as comma-separated tokens, each one of
    ``0``, ``1``, ``W`` or ``p/q``. Positions in errors are 1-based.

    :param text: The text to parse. The empty string is the empty sequence.

    :return: The parsed sequence.
    """

    text = text.strip()
    if set(text) <= {"0", "1"}:
        return from_bits(text)

    return tuple(
        _parse_token(token, position)
        for position, token in enumerate(
            utils.string_list_to_list(text), start=1
        )
    )


def format_sequence(s: Sequence) -> str:
    """
    Write a sequence in its canonical text form, the inverse of ``parse``.
    """

    if is_binary(s):
        return "".join(str(symbol) for symbol in s)
    return ",".join(str(symbol) for symbol in s)


@dataclasses.dataclass(frozen=True)
class RunDecomposition:
    """
    The first character and the lengths of the maximal runs of a binary
    sequence. The empty sequence has no first character and no runs.
    """

    first_char: int | None
    run_lengths: tuple[int, ...]

    @property
    def run_count(self) -> int:
        return len(self.run_lengths)

    @property
    def run_chars(self) -> tuple[int, ...]:
        if self.first_char is None:
            return ()
        return tuple(
            (self.first_char + i) % 2 for i in range(self.run_count)
        )

    def reconstruct(self) -> Sequence:
        return tuple(
            itertools.chain.from_iterable(
                (char,) * length
                for char, length in zip(
                    self.run_chars, self.run_lengths, strict=True
                )
            )
        )


def decompose_runs(s: Sequence) -> RunDecomposition:
    """
    Split a binary sequence into its maximal runs, such as ``0010111`` into
    the first character ``0`` and the lengths ``(2, 1, 1, 3)``.
    """

    if not s:
        return RunDecomposition(first_char=None, run_lengths=())

    return RunDecomposition(
        first_char=int(s[0]),
        run_lengths=tuple(len(list(group)) for _, group in itertools.groupby(s)),
    )


def run_count(s: Sequence) -> int:
    return sum(1 for _ in itertools.groupby(s))


def condensed(s: Sequence) -> Sequence:
    """
    Shrink every run to a single character.
    """

    return tuple(symbol for symbol, _ in itertools.groupby(s))


def alternating(length: int, start: int) -> Sequence:
    """
    The alternating binary sequence of the given length and first character.
    """

    return tuple((start + i) % 2 for i in range(length))


def complement(s: Sequence) -> Sequence:
    """
    Swap the 0s and 1s of a sequence, leaving any other symbol alone.
    """

    return tuple(1 - symbol if symbol in {0, 1} else symbol for symbol in s)


def is_subsequence(x: Sequence, y: Sequence) -> bool:
    """
    Whether ``x`` can be obtained from ``y`` by deleting characters.
    """

    remaining = iter(y)
    return all(symbol in remaining for symbol in x)


def binary_sequences(max_length: int, min_length: int = 0) -> Iterator[Sequence]:
    """
    Yield every binary sequence with length between the bounds, shortest
    first and lexicographically within a length.
    """

    for length in range(min_length, max_length + 1):
        yield from itertools.product((0, 1), repeat=length)
