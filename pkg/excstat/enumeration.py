# enumeration.py
# Brute-force distribution tables over S_n, A_n, derangements, B_n and B_n^+-.

import logging
from concurrent.futures import ProcessPoolExecutor
from enum import Enum
from itertools import permutations, product
from math import comb, factorial
from typing import Iterator, List, Optional, Tuple

from excstat.common import ExactSeq, StatisticMismatchError, check_enumeration_guard, load_settings
from excstat.permstat import (
    STATISTIC_FUNCTIONS,
    TYPE_A_STATISTICS,
    TYPE_B_STATISTICS,
    StatisticId,
    count_inv,
    count_inv_b,
)
from excstat.properties import PropertyReport

logger = logging.getLogger(__name__)


class ClassFilterA(str, Enum):
    ALL = 'all'
    EVEN = 'even'
    ODD = 'odd'
    DERANGEMENT = 'derangement'


class ClassFilterB(str, Enum):
    ALL = 'all'
    PLUS = 'plus'
    MINUS = 'minus'


def row_length(n: int, s: StatisticId) -> int:
    """Number of k-slots of the distribution row; fixed a priori so rows of equal n align."""
    s = StatisticId(s)
    if s in (StatisticId.EXC, StatisticId.DES, StatisticId.ASC):
        return n
    if s == StatisticId.NEXC:
        return n + 1
    if s == StatisticId.INV:
        return comb(n, 2) + 1
    if s == StatisticId.INV_B:
        return n * n + 1
    return n + 1


def _keep_a(images: Tuple[int, ...], f: ClassFilterA) -> bool:
    if f == ClassFilterA.ALL:
        return True
    if f == ClassFilterA.DERANGEMENT:
        return all(v != i for i, v in enumerate(images, start=1))
    even = count_inv(images) % 2 == 0
    return even if f == ClassFilterA.EVEN else not even


def _keep_b(window: Tuple[int, ...], f: ClassFilterB) -> bool:
    if f == ClassFilterB.ALL:
        return True
    plus = count_inv_b(window) % 2 == 0
    return plus if f == ClassFilterB.PLUS else not plus


def _block_a(first: int, rest: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    """Permutations whose first image is `first`: one contiguous lexicographic rank range."""
    for tail in permutations(rest):
        yield (first,) + tail


def _block_b(first: int, rest: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    """Signed permutations whose first window entry is `first`."""
    for tail in permutations(rest):
        for signs in product((1, -1), repeat=len(tail)):
            yield (first,) + tuple(sign * v for sign, v in zip(signs, tail))


def _tally_a(args) -> List[int]:
    n, stat, f, first = args
    evaluate = STATISTIC_FUNCTIONS[stat]
    counts = [0] * row_length(n, stat)
    rest = tuple(v for v in range(1, n + 1) if v != first)
    for images in _block_a(first, rest):
        if _keep_a(images, f):
            counts[evaluate(images)] += 1
    return counts


def _tally_b(args) -> List[int]:
    n, stat, f, first = args
    evaluate = STATISTIC_FUNCTIONS[stat]
    counts = [0] * row_length(n, stat)
    rest = tuple(v for v in range(1, n + 1) if v != abs(first))
    for window in _block_b(first, rest):
        if _keep_b(window, f):
            counts[evaluate(window)] += 1
    return counts


def _merge(partials) -> List[int]:
    merged = None
    for counts in partials:
        if merged is None:
            merged = list(counts)
        else:
            merged = [a + b for a, b in zip(merged, counts)]
    return merged


def _run_blocks(worker, jobs: list, workers: Optional[int]) -> List[int]:
    if workers is None:
        workers = load_settings()['workers']
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return _merge(pool.map(worker, jobs))
    return _merge(map(worker, jobs))


def distribution_a(n: int, s: StatisticId, f: ClassFilterA = ClassFilterA.ALL,
                   allow_large: Optional[bool] = None, workers: Optional[int] = None) -> ExactSeq:
    """
    Count permutations of [n] in a class by statistic value.

    Args:
        n (int): Size of the symmetric group
        s (StatisticId): Type A statistic
        f (ClassFilterA): all, even, odd or derangement
        allow_large (bool): Override the enumeration guard
        workers (int): Process count for the rank-range partitions

    Returns:
        ExactSeq: Entry k is the number of elements with statistic value k
    """
    s, f = StatisticId(s), ClassFilterA(f)
    if s not in TYPE_A_STATISTICS:
        raise StatisticMismatchError(f"{s.value} is not a type A statistic")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    check_enumeration_guard(n, 'A', allow_large)
    jobs = [(n, s, f, first) for first in range(1, n + 1)]
    row = ExactSeq(tuple(_run_blocks(_tally_a, jobs, workers)))
    logger.debug(f"Enumerated S_{n}: {s.value} over {f.value} -> {row}")
    return row


def distribution_b(n: int, s: StatisticId, f: ClassFilterB = ClassFilterB.ALL,
                   allow_large: Optional[bool] = None, workers: Optional[int] = None) -> ExactSeq:
    """
    Count signed permutations of [n] in a class by statistic value.

    Args:
        n (int): Size of the hyperoctahedral group
        s (StatisticId): Type B statistic
        f (ClassFilterB): all, plus (even inv_B) or minus
        allow_large (bool): Override the enumeration guard
        workers (int): Process count for the partitions

    Returns:
        ExactSeq: Entry k is the number of elements with statistic value k
    """
    s, f = StatisticId(s), ClassFilterB(f)
    if s not in TYPE_B_STATISTICS:
        raise StatisticMismatchError(f"{s.value} is not a type B statistic")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    check_enumeration_guard(n, 'B', allow_large)
    jobs = [(n, s, f, sign * v) for v in range(1, n + 1) for sign in (1, -1)]
    row = ExactSeq(tuple(_run_blocks(_tally_b, jobs, workers)))
    logger.debug(f"Enumerated B_{n}: {s.value} over {f.value} -> {row}")
    return row


def distribution_by_parity(n: int, s: StatisticId,
                           allow_large: Optional[bool] = None) -> Tuple[ExactSeq, ExactSeq]:
    """
    Even/odd (type A) or plus/minus (type B) rows from a single pass.

    Returns:
        Tuple[ExactSeq, ExactSeq]: (even or plus row, odd or minus row)
    """
    s = StatisticId(s)
    type_b = s in TYPE_B_STATISTICS
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    check_enumeration_guard(n, 'B' if type_b else 'A', allow_large)
    evaluate = STATISTIC_FUNCTIONS[s]
    length = row_length(n, s)
    first, second = [0] * length, [0] * length
    if type_b:
        elements = (w for v in range(1, n + 1) for sign in (1, -1)
                    for w in _block_b(sign * v, tuple(u for u in range(1, n + 1) if u != v)))
        length_of = count_inv_b
    else:
        elements = permutations(range(1, n + 1))
        length_of = count_inv
    for element in elements:
        target = first if length_of(element) % 2 == 0 else second
        target[evaluate(element)] += 1
    return ExactSeq(tuple(first)), ExactSeq(tuple(second))


def class_size_a(n: int, f: ClassFilterA) -> int:
    f = ClassFilterA(f)
    if f == ClassFilterA.ALL:
        return factorial(n)
    if f == ClassFilterA.DERANGEMENT:
        d_prev, d = 1, 0  # subfactorials of 0 and 1
        for m in range(2, n + 1):
            d_prev, d = d, (m - 1) * (d + d_prev)
        return d
    if n == 1:
        return 1 if f == ClassFilterA.EVEN else 0
    return factorial(n) // 2


def class_size_b(n: int, f: ClassFilterB) -> int:
    f = ClassFilterB(f)
    if f == ClassFilterB.ALL:
        return 2 ** n * factorial(n)
    return 2 ** (n - 1) * factorial(n)


def equidistribution_check(n: int, allow_large: Optional[bool] = None) -> PropertyReport:
    """
    Descents and excedances share one distribution over S_n and over B_n.

    Returns:
        PropertyReport: witnesses are (group, k) with group 0 for type A and 1 for type B
    """
    witnesses = []
    des_a = distribution_a(n, StatisticId.DES, ClassFilterA.ALL, allow_large)
    exc_a = distribution_a(n, StatisticId.EXC, ClassFilterA.ALL, allow_large)
    witnesses += [(0, k) for k in range(n) if des_a[k] != exc_a[k]]
    des_b = distribution_b(n, StatisticId.DES_B, ClassFilterB.ALL, allow_large)
    exc_b = distribution_b(n, StatisticId.EXC_B, ClassFilterB.ALL, allow_large)
    witnesses += [(1, k) for k in range(n + 1) if des_b[k] != exc_b[k]]
    return PropertyReport(
        property_name='equidistribution',
        witnesses=witnesses,
        detail=f"A: des {des_a} exc {exc_a}; B: desB {des_b} excB {exc_b}",
    )


def stirling_permutations(n: int) -> Iterator[Tuple[int, ...]]:
    """
    Permutations of {1,1,...,n,n} where every entry between the two copies of i exceeds i.

    Built by inserting the adjacent pair (n, n) into every gap of each order n-1 word.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n == 1:
        yield (1, 1)
        return
    for word in stirling_permutations(n - 1):
        for gap in range(len(word) + 1):
            yield word[:gap] + (n, n) + word[gap:]


def stirling_descents(word: Tuple[int, ...]) -> int:
    """Descents of a Stirling permutation, counted with a trailing 0 sentinel."""
    padded = tuple(word) + (0,)
    return sum(1 for i in range(len(word)) if padded[i] > padded[i + 1])


def second_order_distribution(n: int, allow_large: Optional[bool] = None) -> ExactSeq:
    """Descent counts over Stirling permutations of order n, for k = 1..n (offset 0..n-1)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    # (2n-1)!! words, so this has its own guard
    check_enumeration_guard(n, 'Q', allow_large)
    counts = [0] * n
    for word in stirling_permutations(n):
        counts[stirling_descents(word) - 1] += 1
    return ExactSeq(tuple(counts))
