"""
The exceptions raised throughout the package.

Everything raised on purpose derives from ``SeqRecoverError`` so that the
CLI can tell usage problems apart from genuine bugs.
"""

from __future__ import annotations


class SeqRecoverError(Exception):
    """
    Base class for all the package's exceptions.
    """


class SequenceParseError(SeqRecoverError, ValueError):
    """
    The text form of a sequence could not be parsed.
    """

    def __init__(self, token: str, position: int, reason: str) -> None:
        self.token = token
        self.position = position
        super().__init__(
            f"Cannot parse token {token!r} at position {position}: {reason}"
        )


class UnsupportedAlphabetError(SeqRecoverError, ValueError):
    """
    A symbol is not allowed under the distance's cost model.
    """


class DistanceDomainError(SeqRecoverError, ValueError):
    """
    A distance or construction is undefined for the given operands.
    """


class InvalidMatchingError(SeqRecoverError, ValueError):
    """
    A matching breaks the covering, anchoring or monotonicity properties.
    """


class InfeasibleInstanceError(SeqRecoverError, ValueError):
    """
    An MSS instance asks for more non-adjacent picks than exist.
    """


class QueryContractError(SeqRecoverError, RuntimeError):
    """
    A query broke the oracle session's contract.
    """


class AdversarialOracleError(SeqRecoverError, RuntimeError):
    """
    The oracle's answers are inconsistent with every binary input.
    """


class TheoremViolationError(SeqRecoverError, AssertionError):
    """
    An outcome that a proven statement rules out has been observed.
    """


class DescentStuckError(SeqRecoverError, RuntimeError):
    """
    Coordinate descent found no improving neighbour at a positive distance.
    """


class BudgetExhaustedError(SeqRecoverError, RuntimeError):
    """
    Coordinate descent used up its query budget.
    """


class UnknownNameError(SeqRecoverError, KeyError):
    """
    No strategy or verification suite is registered under the name.
    """
