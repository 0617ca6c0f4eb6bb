"""
Utilities to use throughout the modules.
"""

import pathlib

SEQRECOVER = pathlib.Path(__file__).parent  # `src/seqrecover/`
ROOT = SEQRECOVER.parent.parent


def pascal_to_kebab(text: str) -> str:
    """
    Convert a pascal-case class name to a kebab-case registry name, such as
    ``MssEquivalence`` to ``mss-equivalence``.

    Every uppercase letter starts a new word, so ``MSS`` becomes ``m-s-s``.
    """

    return "".join(
        f"-{letter.lower()}" if letter.isupper() else letter for letter in text
    ).strip("-")


def string_list_to_list(string_list: str, sep: str = ",") -> list[str]:
    """
    Convert a string list to a Python list by splitting on the separator.
    """

    return (
        [token.strip() for token in string_list.split(sep)]
        if string_list
        else []
    )


def ceil_log2(numerator: int, denominator: int = 1) -> int:
    """
    Return ``⌈log₂(numerator / denominator)⌉`` exactly, clamped below at 0.
    """

    exponent = 0
    while denominator << exponent < numerator:
        exponent += 1
    return exponent
