"""
The configuration options of the strategies and the verification lab.

The defaults live in ``resources/configuration.yaml``; a user file only
needs to name the options it changes.
"""

from __future__ import annotations

import collections
import fractions
import os
import pathlib
from typing import Any

import yaml

from seqrecover import utils

DEFAULT_CONFIG = utils.SEQRECOVER / "resources/configuration.yaml"
MAX_N_VARIABLE = "SEQRECOVER_MAX_N"


def _read_options(filepath: str | pathlib.Path) -> dict[str, Any]:
    with open(filepath) as f:
        return yaml.safe_load(f.read())["seqrecover"]["options"]


class Configuration:
    """
    The configuration of a run.

    The docstrings should be taken from the ``description`` property of the
    JSON schema.
    """

    def __init__(self, configuration: dict) -> None:
        self.configuration = configuration
        self.options = self.configuration["seqrecover"]["options"]

    @classmethod
    def from_default(cls) -> Configuration:
        """
        Read the ``configuration.yaml`` into a Configuration object.
        """

        return Configuration({"seqrecover": {"options": _read_options(DEFAULT_CONFIG)}})

    @classmethod
    def from_file(cls, filepath: str | pathlib.Path) -> Configuration:
        """
        Layer a user configuration file over the default one.
        """

        options = collections.ChainMap(
            _read_options(filepath),
            _read_options(DEFAULT_CONFIG),
        )
        return Configuration({"seqrecover": {"options": options}})

    def with_options(self, **overrides: Any) -> Configuration:
        """
        Return a copy with some options replaced, using snake-case names for
        the kebab-case keys.
        """

        options = collections.ChainMap(
            {key.replace("_", "-"): value for key, value in overrides.items()},
            self.options,
        )
        return Configuration({"seqrecover": {"options": options}})

    def to_dict(self) -> dict[str, Any]:
        return dict(self.options) | {"max-n": self.max_n}

    def _get_option_value(self, option: str, default: Any) -> Any:
        return self.options.get(option, default)

    @property
    def max_n(self) -> int:
        if MAX_N_VARIABLE in os.environ:
            return int(os.environ[MAX_N_VARIABLE])
        return self._get_option_value("max-n", 16)

    @property
    def query_length_factor(self) -> int:
        return self._get_option_value("query-length-factor", 2)

    @property
    def query_length_offset(self) -> int:
        return self._get_option_value("query-length-offset", 4)

    def query_length_cap(self, n: int) -> int:
        return self.query_length_factor * n + self.query_length_offset

    @property
    def two_extra_a(self) -> fractions.Fraction:
        return fractions.Fraction(self._get_option_value("two-extra-a", "1/3"))

    @property
    def two_extra_b(self) -> fractions.Fraction:
        return fractions.Fraction(self._get_option_value("two-extra-b", "2/5"))

    @property
    def two_extra_scale(self) -> int:
        return self._get_option_value("two-extra-scale", 1)

    @property
    def seed(self) -> int:
        return self._get_option_value("seed", 0)

    @property
    def workers(self) -> int:
        return self._get_option_value("workers", 1)

    @property
    def table_n(self) -> int:
        return self._get_option_value("table-n", 8)

    def brute_force_max_query_length(self, n: int) -> int:
        value = self._get_option_value("brute-force-max-query-length", None)
        return 2 * n + 4 if value is None else value

    @property
    def witness_max_query_length(self) -> int:
        return self._get_option_value("witness-max-query-length", 14)

    @property
    def partition_max_n(self) -> int:
        return self._get_option_value("partition-max-n", 6)

    @property
    def partition_max_query_length(self) -> int:
        return self._get_option_value("partition-max-query-length", 16)

    @property
    def runs_window_max_query_length(self) -> int:
        return self._get_option_value("runs-window-max-query-length", 12)

    @property
    def mss_exhaustive_max_length(self) -> int:
        return self._get_option_value("mss-exhaustive-max-length", 6)

    @property
    def mss_random_pairs(self) -> int:
        return self._get_option_value("mss-random-pairs", 100_000)

    @property
    def mss_random_max_length(self) -> int:
        return self._get_option_value("mss-random-max-length", 12)

    @property
    def matching_random_triples(self) -> int:
        return self._get_option_value("matching-random-triples", 10_000)

    @property
    def frechet_extra_pairs(self) -> int:
        return self._get_option_value("frechet-extra-pairs", 100)

    @property
    def frechet_extra_trials(self) -> int:
        return self._get_option_value("frechet-extra-trials", 500)
