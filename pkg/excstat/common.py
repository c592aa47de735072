# common.py
# Shared value types, errors, settings and logging setup for the excstat modules.

import logging
import os
from math import comb
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, Optional, Tuple, Union

VERSION = '0.1.0'

DEFAULT_SETTINGS = {
    'enum_limit_a': 12,
    'enum_limit_b': 9,
    'enum_limit_stirling': 8,
    'exhaustive_cap': 2 ** 20,
    'workers': 1,
    'log_level': 'INFO',
    'random_seed': 20240101,
    'allow_large': False,
    'random_samples': 10_000,
}

# Environment variable -> (setting name, parser)
ENV_OVERRIDES = {
    'EXCSTAT_ENUM_LIMIT_A': ('enum_limit_a', int),
    'EXCSTAT_ENUM_LIMIT_B': ('enum_limit_b', int),
    'EXCSTAT_ENUM_LIMIT_STIRLING': ('enum_limit_stirling', int),
    'EXCSTAT_EXHAUSTIVE_CAP': ('exhaustive_cap', int),
    'EXCSTAT_WORKERS': ('workers', int),
    'EXCSTAT_RANDOM_SAMPLES': ('random_samples', int),
    'EXCSTAT_LOG_LEVEL': ('log_level', str),
    'EXCSTAT_ALLOW_LARGE': ('allow_large', lambda v: v.strip().lower() in ('1', 'true', 'yes', 'on')),
}

logging.basicConfig(
    level=os.environ.get('EXCSTAT_LOG_LEVEL', DEFAULT_SETTINGS['log_level']).upper(),
    format='%(asctime)s %(levelname)s %(name)s: %(message)s',
)
logger = logging.getLogger(__name__)


class ExcstatError(Exception):
    """Base class for every error raised by excstat."""


class StatisticMismatchError(ExcstatError, ValueError):
    """A statistic tag was applied to the wrong kind of group element."""


class InvalidPermutationError(ExcstatError, ValueError):
    """The given images/window do not describe a (signed) permutation."""


class EnumerationLimitError(ExcstatError):
    """Brute-force enumeration was asked for a size above the configured guard."""

    def __init__(self, n: int, limit: int, group: str):
        self.n = n
        self.limit = limit
        self.group = group
        super().__init__(
            f"Enumeration of {group} with n={n} exceeds the guard n <= {limit}; "
            f"pass allow_large=True or set EXCSTAT_ALLOW_LARGE=1 to override"
        )


class LengthMismatchError(ExcstatError, ValueError):
    """A pairwise predicate received sequences of different lengths."""


class ExhaustiveCapError(ExcstatError):
    """An exhaustive S-family scan would visit more sequences than allowed."""


class NotApplicableError(ExcstatError):
    """A check was called on input outside the range it applies to."""


class LemmaRangeError(ExcstatError, IndexError):
    """A decomposition index lies outside the range the identity is stated for."""


class RuleViolationError(ExcstatError):
    """A coefficient rule produced a negative coefficient inside its k-range."""

    def __init__(self, rule_name: str, n: int, k: int, which: str, value: int):
        self.rule_name = rule_name
        self.n = n
        self.k = k
        self.which = which
        self.value = value
        super().__init__(
            f"Rule '{rule_name}': coefficient {which}({n},{k}) = {value} is negative"
        )


class RuleParseError(ExcstatError, ValueError):
    """A rule file could not be parsed into a CoeffRule."""


def load_settings(overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    Build the effective settings dictionary.

    Args:
        overrides (Dict[str, Any]): Values that take precedence over the environment

    Returns:
        Dict[str, Any]: Defaults, then environment overrides, then explicit overrides
    """
    settings = dict(DEFAULT_SETTINGS)
    for env_name, (key, parse) in ENV_OVERRIDES.items():
        raw = os.environ.get(env_name)
        if raw is None or raw == '':
            continue
        try:
            settings[key] = parse(raw)
        except ValueError:
            logger.error(f"Ignoring malformed {env_name}={raw!r}")
            raise
    if overrides:
        settings.update({k: v for k, v in overrides.items() if v is not None})
    return settings


# Enumeration group tag -> (limit setting, label used in messages)
GUARD_LIMITS = {
    'A': ('enum_limit_a', 'type A'),
    'B': ('enum_limit_b', 'type B'),
    'Q': ('enum_limit_stirling', 'Stirling permutations'),
}


def check_enumeration_guard(n: int, group: str, allow_large: Optional[bool] = None) -> None:
    """
    Raise EnumerationLimitError when n is above the guard for the group.

    Args:
        n (int): Size of the group to enumerate
        group (str): 'A' for symmetric groups, 'B' for hyperoctahedral groups,
            'Q' for Stirling permutations of order n
        allow_large (bool): Explicit override; None defers to the settings
    """
    if group not in GUARD_LIMITS:
        raise ValueError(f"Unknown enumeration group: {group}")
    key, label = GUARD_LIMITS[group]
    settings = load_settings()
    limit = settings[key]
    if allow_large is None:
        allow_large = settings['allow_large']
    if n > limit:
        if allow_large:
            logger.warning(f"Enumerating {label} with n={n} above guard {limit}")
            return
        raise EnumerationLimitError(n, limit, label)


@dataclass(frozen=True)
class ExactSeq:
    """Finite sequence of non-negative Python integers indexed from 0."""

    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        if not values:
            raise ValueError("ExactSeq needs at least one entry")
        if any(v < 0 for v in values):
            raise ValueError(f"ExactSeq entries must be non-negative, got {values}")
        object.__setattr__(self, 'values', values)

    @classmethod
    def of(cls, *values: int) -> 'ExactSeq':
        return cls(tuple(values))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __getitem__(self, index: Union[int, slice]):
        return self.values[index]

    def get(self, k: int) -> int:
        """Entry k, or 0 when k is outside the stored range."""
        if 0 <= k < len(self.values):
            return self.values[k]
        return 0

    def interior(self) -> range:
        """Indices with both neighbours present."""
        return range(1, len(self.values) - 1)

    def has_internal_zero(self) -> bool:
        nonzero = [i for i, v in enumerate(self.values) if v != 0]
        if not nonzero:
            return False
        return any(self.values[i] == 0 for i in range(nonzero[0], nonzero[-1] + 1))

    def __str__(self) -> str:
        return '(' + ','.join(str(v) for v in self.values) + ')'


def as_seq(values: Union['ExactSeq', Iterable[int]]) -> ExactSeq:
    """Coerce a plain iterable of integers to an ExactSeq."""
    if isinstance(values, ExactSeq):
        return values
    return ExactSeq(tuple(values))


def alternating_binomial_row(n: int, length: int) -> Tuple[int, ...]:
    """((-1)^k C(n, k)) for k = 0..length-1."""
    return tuple((-1) ** k * comb(n, k) for k in range(length))
