# properties.py
# Sequence and sequence-pair predicates: log-concavity, unimodality, (strong)
# synchronisation, ratio-alternation and the S-family equivalences.

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from excstat.common import (
    ExactSeq,
    ExhaustiveCapError,
    LengthMismatchError,
    NotApplicableError,
    as_seq,
    load_settings,
)

logger = logging.getLogger(__name__)

SeqLike = Union[ExactSeq, Iterable[int]]


@dataclass
class PropertyReport:
    """Verdict of a predicate together with the indices where it fails."""

    property_name: str
    witnesses: List[Tuple[int, ...]] = field(default_factory=list)
    detail: str = ''
    hypothesis_met: bool = True
    counterexample: Optional[ExactSeq] = None

    @property
    def verdict(self) -> bool:
        return not self.witnesses

    def __bool__(self) -> bool:
        return self.verdict


class RatioPattern(str, Enum):
    # pattern22: a_even <= b_even and a_odd >= b_odd
    # pattern23: a_even >= b_even and a_odd <= b_odd
    PATTERN22 = 'pattern22'
    PATTERN23 = 'pattern23'
    BOTH = 'both'
    NEITHER = 'neither'


def _pair(a: SeqLike, b: SeqLike) -> Tuple[ExactSeq, ExactSeq]:
    a, b = as_seq(a), as_seq(b)
    if len(a) != len(b):
        raise LengthMismatchError(f"Sequences have lengths {len(a)} and {len(b)}")
    return a, b


def _log_concave_failures(a: ExactSeq, parity: Optional[int] = None) -> List[Tuple[int, ...]]:
    return [
        (i,) for i in a.interior()
        if (parity is None or i % 2 == parity) and a[i] * a[i] < a[i - 1] * a[i + 1]
    ]


def is_log_concave(a: SeqLike) -> PropertyReport:
    """a_i^2 >= a_{i-1} a_{i+1} at every interior index."""
    a = as_seq(a)
    return PropertyReport('log-concave', _log_concave_failures(a))


def is_even_log_concave(a: SeqLike) -> PropertyReport:
    a = as_seq(a)
    return PropertyReport('even-log-concave', _log_concave_failures(a, parity=0))


def is_odd_log_concave(a: SeqLike) -> PropertyReport:
    a = as_seq(a)
    return PropertyReport('odd-log-concave', _log_concave_failures(a, parity=1))


def is_unimodal(a: SeqLike) -> PropertyReport:
    """
    Weakly increasing up to some peak index r, weakly decreasing after it.

    The witness is the first index after the descent began where the sequence rises again.
    """
    a = as_seq(a)
    i = 0
    while i + 1 < len(a) and a[i] <= a[i + 1]:
        i += 1
    while i + 1 < len(a) and a[i] >= a[i + 1]:
        i += 1
    witnesses = [] if i + 1 >= len(a) else [(i,)]
    return PropertyReport('unimodal', witnesses)


def is_synchronised(a: SeqLike, b: SeqLike) -> PropertyReport:
    """
    Both sequences log-concave and a_{k-1} b_{k+1} <= a_k b_k >= a_{k+1} b_{k-1} for interior k.
    """
    a, b = _pair(a, b)
    failing = set()
    for k in a.interior():
        centre = a[k] * b[k]
        if (a[k] * a[k] < a[k - 1] * a[k + 1]
                or b[k] * b[k] < b[k - 1] * b[k + 1]
                or a[k - 1] * b[k + 1] > centre
                or a[k + 1] * b[k - 1] > centre):
            failing.add(k)
    return PropertyReport('synchronised', [(k,) for k in sorted(failing)])


def strong_sync_failures(a: ExactSeq, b: ExactSeq) -> List[Tuple[int, ...]]:
    witnesses = []
    for k in a.interior():
        low = min(a[k], b[k])
        if low * low < max(a[k + 1], b[k + 1]) * max(a[k - 1], b[k - 1]):
            witnesses.append((k,))
    return witnesses


def is_strongly_synchronised(a: SeqLike, b: SeqLike) -> PropertyReport:
    """(min{a_k, b_k})^2 >= max{a_{k+1}, b_{k+1}} * max{a_{k-1}, b_{k-1}} for interior k."""
    a, b = _pair(a, b)
    return PropertyReport('strongly-synchronised', strong_sync_failures(a, b))


def is_ratio_alternating(a: SeqLike, b: SeqLike) -> Tuple[PropertyReport, RatioPattern]:
    """
    Check which alternating-dominance pattern the pair follows.

    Returns:
        Tuple[PropertyReport, RatioPattern]: the report lists (22, i) and (23, i) for the
        indices breaking each pattern when neither holds
    """
    a, b = _pair(a, b)
    broken22 = [i for i in range(len(a)) if (a[i] > b[i] if i % 2 == 0 else a[i] < b[i])]
    broken23 = [i for i in range(len(a)) if (a[i] < b[i] if i % 2 == 0 else a[i] > b[i])]
    if not broken22 and not broken23:
        pattern = RatioPattern.BOTH
    elif not broken22:
        pattern = RatioPattern.PATTERN22
    elif not broken23:
        pattern = RatioPattern.PATTERN23
    else:
        pattern = RatioPattern.NEITHER
    witnesses = []
    if pattern == RatioPattern.NEITHER:
        witnesses = [(22, i) for i in broken22] + [(23, i) for i in broken23]
    return PropertyReport('ratio-alternating', witnesses, detail=pattern.value), pattern


def mixed_sequences(seqs: Sequence[ExactSeq]) -> Iterator[Tuple[int, ...]]:
    """Every sequence whose k-th entry is taken from one of the given sequences, in counter order."""
    columns = [tuple(dict.fromkeys(s[k] for s in seqs)) for k in range(len(seqs[0]))]
    return product(*columns)


def s_family_all_log_concave(seqs: Sequence[SeqLike],
                             exhaustive_cap: Optional[int] = None) -> PropertyReport:
    """
    Exhaustively test log-concavity of every mixed sequence built from the given sequences.

    Args:
        seqs (Sequence): l sequences of equal length
        exhaustive_cap (int): Upper bound on l ** length; defaults to the settings value

    Returns:
        PropertyReport: On failure `counterexample` holds the first non-log-concave mixed
        sequence and `witnesses` its failing indices
    """
    seqs = [as_seq(s) for s in seqs]
    if not seqs:
        raise ValueError("At least one sequence is required")
    length = len(seqs[0])
    if any(len(s) != length for s in seqs):
        raise LengthMismatchError(f"Sequences have lengths {[len(s) for s in seqs]}")
    if exhaustive_cap is None:
        exhaustive_cap = load_settings()['exhaustive_cap']
    size = len(seqs) ** length
    if size > exhaustive_cap:
        hint = " use is_strongly_synchronised, which is equivalent for two sequences" if len(seqs) == 2 else ""
        raise ExhaustiveCapError(
            f"S-family has {len(seqs)}^{length} = {size} members, above cap {exhaustive_cap};{hint}"
        )
    for mixed in mixed_sequences(seqs):
        failures = [
            (i,) for i in range(1, length - 1)
            if mixed[i] * mixed[i] < mixed[i - 1] * mixed[i + 1]
        ]
        if failures:
            witness = ExactSeq(mixed)
            logger.debug(f"S-family member {witness} is not log-concave")
            return PropertyReport('s-family-log-concave', failures, counterexample=witness)
    return PropertyReport('s-family-log-concave')


def min_max_criterion_check(a: SeqLike, b: SeqLike,
                            exhaustive_cap: Optional[int] = None) -> PropertyReport:
    """
    Strong synchronisation agrees with log-concavity of the whole S(a, b) family.

    A mismatch is reported as the witness (strong-sync verdict, family verdict).
    """
    a, b = _pair(a, b)
    strong = is_strongly_synchronised(a, b).verdict
    family = s_family_all_log_concave([a, b], exhaustive_cap)
    witnesses = [] if strong == family.verdict else [(int(strong), int(family.verdict))]
    return PropertyReport(
        'min-max-criterion',
        witnesses,
        detail=f"strongly synchronised: {strong}; all mixed log-concave: {family.verdict}",
        counterexample=family.counterexample,
    )


def interlacing_check(a: SeqLike, b: SeqLike) -> PropertyReport:
    """
    min{a_j,b_j} min{a_l,b_l} >= max{a_{j-i},b_{j-i}} max{a_{l+i},b_{l+i}} for j <= l, i >= 1.

    Equivalence with strong synchronisation is only claimed when every interior entry of
    both sequences is positive; `hypothesis_met` records whether that holds.
    """
    a, b = _pair(a, b)
    low = [min(x, y) for x, y in zip(a, b)]
    high = [max(x, y) for x, y in zip(a, b)]
    length = len(a)
    witnesses = []
    for j in range(length):
        for l in range(j, length):
            for i in range(1, min(j, length - 1 - l) + 1):
                if low[j] * low[l] < high[j - i] * high[l + i]:
                    witnesses.append((j, l, i))
    positive = all(a[k] > 0 and b[k] > 0 for k in a.interior())
    if not positive:
        logger.warning("Interlacing check run on a pair with a zero interior entry")
    return PropertyReport(
        'interlacing',
        witnesses,
        hypothesis_met=positive,
        detail='' if positive else 'interior entries not all positive; equivalence not asserted',
    )


def ratio_alternating_equivalence_check(a: SeqLike, b: SeqLike) -> PropertyReport:
    """
    For a ratio-alternating pair, alternating-parity log-concavity matches strong synchronisation.

    pattern22: (a even log-concave and b odd log-concave) <=> strongly synchronised.
    pattern23: (a odd log-concave and b even log-concave) <=> strongly synchronised.

    Raises:
        NotApplicableError: The pair follows neither pattern
    """
    a, b = _pair(a, b)
    _, pattern = is_ratio_alternating(a, b)
    if pattern == RatioPattern.NEITHER:
        raise NotApplicableError(f"{a} and {b} are not ratio-alternating")
    strong = is_strongly_synchronised(a, b).verdict
    branches = {}
    if pattern in (RatioPattern.PATTERN22, RatioPattern.BOTH):
        branches[22] = is_even_log_concave(a).verdict and is_odd_log_concave(b).verdict
    if pattern in (RatioPattern.PATTERN23, RatioPattern.BOTH):
        branches[23] = is_odd_log_concave(a).verdict and is_even_log_concave(b).verdict
    agreeing = [tag for tag, parity_side in branches.items() if parity_side == strong]
    witnesses = [] if agreeing else [(tag, int(side)) for tag, side in branches.items()]
    return PropertyReport(
        'ratio-alternating-equivalence',
        witnesses,
        detail=f"pattern {pattern.value}; strongly synchronised: {strong}",
    )
