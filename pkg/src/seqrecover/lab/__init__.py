"""
Brute-force verification of the indistinguishability, lower-bound and
reduction claims the strategies rest on.
"""

from seqrecover.lab.suites import Suite, SuiteReport, get_suite

__all__ = [
    "Suite",
    "SuiteReport",
    "get_suite",
]
