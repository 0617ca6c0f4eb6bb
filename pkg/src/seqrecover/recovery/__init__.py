"""
All recovery strategies supported by the application.

Importing this package registers every strategy in
``Strategy.strategies``.
"""

from seqrecover.recovery.descent import (
    CoordinateDescentDtw,
    CoordinateDescentEdit,
    CoordinateDescentFrechet,
)
from seqrecover.recovery.dtw import (
    DtwAdaptiveHalf,
    DtwEquivalence2n,
    DtwFourQuery,
    DtwOneExtra,
    DtwTwoExtra,
)
from seqrecover.recovery.edit import (
    EditAdaptiveRuns,
    EditAdaptiveRunsLinear,
    EditAdaptiveUnit,
    EditBinary,
    EditWildcard,
)
from seqrecover.recovery.frechet import FrechetClasses

__all__ = [
    "CoordinateDescentDtw",
    "CoordinateDescentEdit",
    "CoordinateDescentFrechet",
    "DtwAdaptiveHalf",
    "DtwEquivalence2n",
    "DtwFourQuery",
    "DtwOneExtra",
    "DtwTwoExtra",
    "EditAdaptiveRuns",
    "EditAdaptiveRunsLinear",
    "EditAdaptiveUnit",
    "EditBinary",
    "EditWildcard",
    "FrechetClasses",
]
