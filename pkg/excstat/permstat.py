# permstat.py
# Type A permutations, Type B signed permutations and the statistics evaluated on them.

import logging
from enum import Enum
from typing import Sequence, Tuple

from excstat.common import InvalidPermutationError, StatisticMismatchError

logger = logging.getLogger(__name__)


class StatisticId(str, Enum):
    """Dispatch key over the permutation statistics."""

    EXC = 'exc'
    NEXC = 'nexc'
    DES = 'des'
    ASC = 'asc'
    INV = 'inv'
    EXC_B = 'excB'
    WKEXC_B = 'wkexcB'
    DES_B = 'desB'
    ASC_B = 'ascB'
    INV_B = 'invB'
    NEGS = 'negs'

    @property
    def is_type_b(self) -> bool:
        return self in TYPE_B_STATISTICS

    @classmethod
    def parse(cls, tag: str) -> 'StatisticId':
        for member in cls:
            if member.value.lower() == tag.lower():
                return member
        raise ValueError(f"Unknown statistic: {tag}")


TYPE_A_STATISTICS = frozenset({
    StatisticId.EXC, StatisticId.NEXC, StatisticId.DES, StatisticId.ASC, StatisticId.INV,
})
TYPE_B_STATISTICS = frozenset({
    StatisticId.EXC_B, StatisticId.WKEXC_B, StatisticId.DES_B, StatisticId.ASC_B,
    StatisticId.INV_B, StatisticId.NEGS,
})


class Parity(str, Enum):
    EVEN = 'even'
    ODD = 'odd'


class LengthParity(str, Enum):
    PLUS = 'plus'
    MINUS = 'minus'


# Statistic functions on a bare 1-based image tuple; used directly by the
# enumeration hot loop so it can skip object construction.

def count_exc(images: Sequence[int]) -> int:
    return sum(1 for i, v in enumerate(images, start=1) if v > i)


def count_nexc(images: Sequence[int]) -> int:
    return sum(1 for i, v in enumerate(images, start=1) if v <= i)


def count_des(images: Sequence[int]) -> int:
    return sum(1 for i in range(len(images) - 1) if images[i] > images[i + 1])


def count_asc(images: Sequence[int]) -> int:
    return sum(1 for i in range(len(images) - 1) if images[i] < images[i + 1])


def count_inv(images: Sequence[int]) -> int:
    n = len(images)
    return sum(1 for i in range(n) for j in range(i + 1, n) if images[i] > images[j])


def count_exc_b(window: Sequence[int]) -> int:
    # pi_{|pi(i)|} > pi_i, plus the pi_i = -i terms
    total = 0
    for i, v in enumerate(window, start=1):
        if window[abs(v) - 1] > v:
            total += 1
        if v == -i:
            total += 1
    return total


def count_wkexc_b(window: Sequence[int]) -> int:
    total = 0
    for i, v in enumerate(window, start=1):
        if window[abs(v) - 1] > v:
            total += 1
        if v == i:
            total += 1
    return total


def count_des_b(window: Sequence[int]) -> int:
    # pi_0 = 0 sentinel, indices 0..n-1
    padded = (0,) + tuple(window)
    return sum(1 for i in range(len(window)) if padded[i] > padded[i + 1])


def count_asc_b(window: Sequence[int]) -> int:
    padded = (0,) + tuple(window)
    return sum(1 for i in range(len(window)) if padded[i] < padded[i + 1])


def count_negs(window: Sequence[int]) -> int:
    return sum(1 for v in window if v < 0)


def count_inv_b(window: Sequence[int]) -> int:
    n = len(window)
    crossed = sum(1 for i in range(n) for j in range(i + 1, n) if -window[i] > window[j])
    return count_inv(window) + crossed + count_negs(window)


STATISTIC_FUNCTIONS = {
    StatisticId.EXC: count_exc,
    StatisticId.NEXC: count_nexc,
    StatisticId.DES: count_des,
    StatisticId.ASC: count_asc,
    StatisticId.INV: count_inv,
    StatisticId.EXC_B: count_exc_b,
    StatisticId.WKEXC_B: count_wkexc_b,
    StatisticId.DES_B: count_des_b,
    StatisticId.ASC_B: count_asc_b,
    StatisticId.INV_B: count_inv_b,
    StatisticId.NEGS: count_negs,
}


class PermutationA:
    """A permutation of [n] stored by its images pi_1..pi_n."""

    __slots__ = ('images',)

    def __init__(self, images: Sequence[int]):
        images = tuple(int(v) for v in images)
        if not images:
            raise InvalidPermutationError("A permutation needs n >= 1")
        if sorted(images) != list(range(1, len(images) + 1)):
            raise InvalidPermutationError(f"{images} is not a permutation of [{len(images)}]")
        object.__setattr__(self, 'images', images)

    def __setattr__(self, name, value):
        raise AttributeError("PermutationA is immutable")

    @classmethod
    def identity(cls, n: int) -> 'PermutationA':
        return cls(range(1, n + 1))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, PermutationA) and self.images == other.images

    def __hash__(self) -> int:
        return hash(('A', self.images))

    def __repr__(self) -> str:
        return f"PermutationA({self.images})"

    def compose(self, other: 'PermutationA') -> 'PermutationA':
        """(self o other)(i) = self(other(i))."""
        if other.n != self.n:
            raise InvalidPermutationError(f"Cannot compose sizes {self.n} and {other.n}")
        return PermutationA(self.images[j - 1] for j in other.images)

    def fixed_points(self) -> Tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.images, start=1) if v == i)

    def is_derangement(self) -> bool:
        return not self.fixed_points()


class SignedPermutation:
    """An element of B_n stored by its window pi_1..pi_n; pi(-i) = -pi(i)."""

    __slots__ = ('window',)

    def __init__(self, window: Sequence[int]):
        window = tuple(int(v) for v in window)
        if not window:
            raise InvalidPermutationError("A signed permutation needs n >= 1")
        if sorted(abs(v) for v in window) != list(range(1, len(window) + 1)):
            raise InvalidPermutationError(f"{window} is not a signed permutation of [{len(window)}]")
        object.__setattr__(self, 'window', window)

    def __setattr__(self, name, value):
        raise AttributeError("SignedPermutation is immutable")

    @classmethod
    def identity(cls, n: int) -> 'SignedPermutation':
        return cls(range(1, n + 1))

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, i: int) -> int:
        """Full map on +-[n]; the negative half is reconstructed from the window."""
        if i == 0 or abs(i) > self.n:
            raise IndexError(f"{i} is outside +-[{self.n}]")
        value = self.window[abs(i) - 1]
        return value if i > 0 else -value

    def __eq__(self, other) -> bool:
        return isinstance(other, SignedPermutation) and self.window == other.window

    def __hash__(self) -> int:
        return hash(('B', self.window))

    def __repr__(self) -> str:
        return f"SignedPermutation({self.window})"

    def negs(self) -> Tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.window, start=1) if v < 0)


def stat_a(p: PermutationA, s: StatisticId) -> int:
    """
    Evaluate a Type A statistic on a permutation.

    Args:
        p (PermutationA): The permutation
        s (StatisticId): One of exc, nexc, des, asc, inv

    Returns:
        int: The statistic value
    """
    s = StatisticId(s)
    if s not in TYPE_A_STATISTICS:
        raise StatisticMismatchError(f"{s.value} is a type B statistic; got {p!r}")
    return STATISTIC_FUNCTIONS[s](p.images)


def stat_b(p: SignedPermutation, s: StatisticId) -> int:
    """
    Evaluate a Type B statistic on a signed permutation.

    Args:
        p (SignedPermutation): The signed permutation
        s (StatisticId): One of excB, wkexcB, desB, ascB, invB, negs

    Returns:
        int: The statistic value
    """
    s = StatisticId(s)
    if s not in TYPE_B_STATISTICS:
        raise StatisticMismatchError(f"{s.value} is a type A statistic; got {p!r}")
    return STATISTIC_FUNCTIONS[s](p.window)


def parity_a(p: PermutationA) -> Parity:
    return Parity.EVEN if count_inv(p.images) % 2 == 0 else Parity.ODD


def length_parity_b(p: SignedPermutation) -> LengthParity:
    return LengthParity.PLUS if count_inv_b(p.window) % 2 == 0 else LengthParity.MINUS
