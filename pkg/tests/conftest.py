"""
Shared fixtures for the unit tests.
"""

import pytest

# Importing the recovery package registers the strategies
import seqrecover.recovery  # noqa: F401
from seqrecover.core import configuration


@pytest.fixture(scope="module")
def default_configuration() -> configuration.Configuration:
    """
    The packaged default configuration.
    """

    return configuration.Configuration.from_default()
