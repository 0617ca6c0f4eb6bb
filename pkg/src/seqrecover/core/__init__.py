from seqrecover.core.configuration import Configuration
from seqrecover.core.distances import DistanceKind
from seqrecover.core.oracle import (
    Mode,
    OracleSession,
    RecoveryLevel,
    RecoveryReport,
    ReplaySession,
)
from seqrecover.core.strategies import (
    NonAdaptiveStrategy,
    Strategy,
    get_strategy,
)

__all__ = [
    "Configuration",
    "DistanceKind",
    "Mode",
    "NonAdaptiveStrategy",
    "OracleSession",
    "RecoveryLevel",
    "RecoveryReport",
    "ReplaySession",
    "Strategy",
    "get_strategy",
]
