# recurrence.py
# Exact triangles for every sequence family, the nine-term decompositions of
# P_{n,k}^2 - P_{n,k+1}P_{n,k-1} and the sign audits built on them.

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Tuple, Union

import pandas as pd
from sympy import Poly, expand, symbols

from excstat.common import ExactSeq, LemmaRangeError, alternating_binomial_row
from excstat.properties import PropertyReport

logger = logging.getLogger(__name__)

t = symbols('t')


class FamilyId(str, Enum):
    EULER_A = 'eulerA'
    PQ_A = 'pqA'
    EULER_B = 'eulerB'
    PQ_B = 'pqB'
    SECOND_ORDER_EULER = 'secondOrderEuler'
    GAMMA_A = 'gammaA'
    GAMMA_B = 'gammaB'

    @classmethod
    def parse(cls, tag: str) -> 'FamilyId':
        for member in cls:
            if member.value.lower() == tag.lower():
                return member
        raise ValueError(f"Unknown family: {tag}")


@dataclass(frozen=True)
class TriangularArray:
    """
    Rows 1..n_max of a family; rows[n-1] holds row n and entry j of a row is k = j + k_offset.

    `family` is a FamilyId value, or a rule name for triangles built from a coefficient rule.
    """

    family: str
    rows: Tuple[ExactSeq, ...]
    k_offset: int = 0

    @property
    def n_max(self) -> int:
        return len(self.rows)

    def row(self, n: int) -> ExactSeq:
        if not 1 <= n <= self.n_max:
            raise IndexError(f"Row {n} not in 1..{self.n_max} of {self.family}")
        return self.rows[n - 1]

    def value(self, n: int, k: int) -> int:
        """t_{n,k} with the out-of-range convention: 0 for any k outside the row or n < 1."""
        if n < 1 or n > self.n_max:
            return 0
        return self.rows[n - 1].get(k - self.k_offset)

    def to_frame(self) -> pd.DataFrame:
        """Long-format frame with columns n, k, value; values stay Python ints (object dtype)."""
        records = [
            (n, j + self.k_offset, v)
            for n, row in enumerate(self.rows, start=1)
            for j, v in enumerate(row)
        ]
        frame = pd.DataFrame(records, columns=['n', 'k', 'value'])
        frame['value'] = frame['value'].astype(object)
        return frame


@dataclass(frozen=True)
class PairTable:
    """Two triangles over the same index ranges, e.g. the even/odd split P and Q."""

    first: TriangularArray
    second: TriangularArray

    def __post_init__(self):
        if self.first.n_max != self.second.n_max:
            raise ValueError(
                f"Pair members have {self.first.n_max} and {self.second.n_max} rows"
            )
        for n in range(1, self.first.n_max + 1):
            if len(self.first.row(n)) != len(self.second.row(n)):
                raise ValueError(f"Pair members disagree on the length of row {n}")

    @property
    def n_max(self) -> int:
        return self.first.n_max

    def row(self, n: int) -> Tuple[ExactSeq, ExactSeq]:
        return self.first.row(n), self.second.row(n)

    def to_frame(self) -> pd.DataFrame:
        """Both members stacked with a leading `series` column (P/Q or PB/QB)."""
        first, second = self.first.to_frame(), self.second.to_frame()
        first.insert(0, 'series', self.first.family)
        second.insert(0, 'series', self.second.family)
        return pd.concat([first, second], ignore_index=True)


def _build(family: str, n_max: int, base: List[int], width: Callable[[int], int],
           step: Callable[[int, int, Callable[[int], int]], int], k_offset: int = 0) -> TriangularArray:
    """
    Generic row-by-row builder for single-sequence recurrences.

    Args:
        family (str): Family tag stored on the result
        n_max (int): Last row to build
        base (List[int]): Row 1
        width (Callable): n -> number of entries of row n
        step (Callable): (n, k, prev) -> t_{n,k}, with prev(k) reading row n-1 (0 out of range)
        k_offset (int): True k of the first stored entry
    """
    if n_max < 1:
        raise ValueError(f"n_max must be positive, got {n_max}")
    rows = [ExactSeq(tuple(base))]
    for n in range(2, n_max + 1):
        previous = rows[-1]

        def prev(k, _row=previous):
            return _row.get(k - k_offset)

        rows.append(ExactSeq(tuple(step(n, j + k_offset, prev) for j in range(width(n)))))
    logger.debug(f"Built {family} rows 1..{n_max}")
    return TriangularArray(family, tuple(rows), k_offset)


def eulerian_a(n_max: int) -> TriangularArray:
    """A_{n,k} = (k+1) A_{n-1,k} + (n-k) A_{n-1,k-1}, k = 0..n-1."""
    return _build(
        FamilyId.EULER_A.value, n_max, [1], lambda n: n,
        lambda n, k, prev: (k + 1) * prev(k) + (n - k) * prev(k - 1),
    )


def eulerian_b(n_max: int) -> TriangularArray:
    """B_{n,k} = (2k+1) B_{n-1,k} + (2n-2k+1) B_{n-1,k-1}, k = 0..n."""
    return _build(
        FamilyId.EULER_B.value, n_max, [1, 1], lambda n: n + 1,
        lambda n, k, prev: (2 * k + 1) * prev(k) + (2 * n - 2 * k + 1) * prev(k - 1),
    )


def second_order_eulerian(n_max: int) -> TriangularArray:
    """H_{n,k} = k H_{n-1,k} + (2n-k) H_{n-1,k-1} seeded with H_{1,1} = 1, k = 1..n."""
    return _build(
        FamilyId.SECOND_ORDER_EULER.value, n_max, [1], lambda n: n,
        lambda n, k, prev: k * prev(k) + (2 * n - k) * prev(k - 1),
        k_offset=1,
    )


def gamma_a(n_max: int) -> TriangularArray:
    """T_{n,k} = (k+1) T_{n-1,k} + (2n-4k) T_{n-1,k-1}, k = 0..floor((n-1)/2)."""
    return _build(
        FamilyId.GAMMA_A.value, n_max, [1], lambda n: (n - 1) // 2 + 1,
        lambda n, k, prev: (k + 1) * prev(k) + (2 * n - 4 * k) * prev(k - 1),
    )


def gamma_b(n_max: int) -> TriangularArray:
    """R_{n,k} = (2k+1) R_{n-1,k} + 4(n+1-2k) R_{n-1,k-1}, k = 0..floor(n/2)."""
    return _build(
        FamilyId.GAMMA_B.value, n_max, [1], lambda n: n // 2 + 1,
        lambda n, k, prev: (2 * k + 1) * prev(k) + 4 * (n + 1 - 2 * k) * prev(k - 1),
    )


def _build_pair(names: Tuple[str, str], n_max: int, base: Tuple[List[int], List[int]],
                width: Callable[[int], int], shifted: Callable[[int, int], int],
                unshifted: Callable[[int, int], int]) -> PairTable:
    """
    Coupled recurrences X_{n,k} = a(n,k) Y_{n-1,k} + b(n,k) Y_{n-1,k-1} + X_{n-1,k} for (X, Y) = (P, Q), (Q, P).
    """
    if n_max < 1:
        raise ValueError(f"n_max must be positive, got {n_max}")
    p_rows, q_rows = [ExactSeq(tuple(base[0]))], [ExactSeq(tuple(base[1]))]
    for n in range(2, n_max + 1):
        p_prev, q_prev = p_rows[-1], q_rows[-1]
        p_row, q_row = [], []
        for k in range(width(n)):
            a, b = unshifted(n, k), shifted(n, k)
            p_row.append(a * q_prev.get(k) + b * q_prev.get(k - 1) + p_prev.get(k))
            q_row.append(a * p_prev.get(k) + b * p_prev.get(k - 1) + q_prev.get(k))
        p_rows.append(ExactSeq(tuple(p_row)))
        q_rows.append(ExactSeq(tuple(q_row)))
    return PairTable(
        TriangularArray(names[0], tuple(p_rows)),
        TriangularArray(names[1], tuple(q_rows)),
    )


def pq_a(n_max: int) -> PairTable:
    """
    Excedance distributions over even (P) and odd (Q) permutations.

    P_{n,k} = k Q_{n-1,k} + (n-k) Q_{n-1,k-1} + P_{n-1,k} and symmetrically for Q.
    """
    return _build_pair(
        ('P', 'Q'), n_max, ([1], [0]), lambda n: n,
        shifted=lambda n, k: n - k, unshifted=lambda n, k: k,
    )


def pq_b(n_max: int) -> PairTable:
    """
    Excedance distributions over B_n^+ (P^B) and B_n^- (Q^B).

    P^B_{n,k} = 2k Q^B_{n-1,k} + (2n-2k+1) Q^B_{n-1,k-1} + P^B_{n-1,k} and symmetrically for Q^B.
    """
    return _build_pair(
        ('PB', 'QB'), n_max, ([1, 0], [0, 1]), lambda n: n + 1,
        shifted=lambda n, k: 2 * n - 2 * k + 1, unshifted=lambda n, k: 2 * k,
    )


FAMILY_BUILDERS: Dict[FamilyId, Callable[[int], Union[TriangularArray, PairTable]]] = {
    FamilyId.EULER_A: eulerian_a,
    FamilyId.PQ_A: pq_a,
    FamilyId.EULER_B: eulerian_b,
    FamilyId.PQ_B: pq_b,
    FamilyId.SECOND_ORDER_EULER: second_order_eulerian,
    FamilyId.GAMMA_A: gamma_a,
    FamilyId.GAMMA_B: gamma_b,
}


def build_family(family: FamilyId, n_max: int) -> Union[TriangularArray, PairTable]:
    family = FamilyId(family)
    table = FAMILY_BUILDERS[family](n_max)
    logger.info(f"Computed {family.value} up to n={n_max}")
    return table


def difference_identity_failures(pair: PairTable, shift: int) -> List[Tuple[int, int]]:
    """
    (n, k) where first - second differs from (-1)^k C(n - shift, k).

    shift is 1 for the even/odd split of S_n and 0 for B_n^+ / B_n^-.
    """
    witnesses = []
    for n in range(1, pair.n_max + 1):
        first, second = pair.row(n)
        expected = alternating_binomial_row(n - shift, len(first))
        witnesses += [(n, k) for k in range(len(first)) if first[k] - second[k] != expected[k]]
    return witnesses


# Nine-term decompositions

@dataclass(frozen=True)
class TiDecomposition:
    """T_1..T_9 at (n, k) together with the left side they decompose."""

    n: int
    k: int
    member: str
    terms: Tuple[int, ...]
    lhs: int

    @property
    def residual(self) -> int:
        return self.lhs - sum(self.terms)

    def term(self, i: int) -> int:
        """T_i, 1-based."""
        return self.terms[i - 1]


def _members(pair: PairTable, member: str):
    member = member.upper()
    if member in ('P', 'PB'):
        return pair.first, pair.second, 'P'
    if member in ('Q', 'QB'):
        return pair.second, pair.first, 'Q'
    raise ValueError(f"member must be 'P' or 'Q', got {member!r}")


def _check_rows(pair: PairTable, n: int) -> None:
    if n > pair.n_max:
        raise ValueError(f"Pair table holds rows up to {pair.n_max}, need row {n}")


def ti_decomposition_a(pq: PairTable, n: int, k: int, member: str = 'P') -> TiDecomposition:
    """
    Split X_{n,k}^2 - X_{n,k+1} X_{n,k-1} into nine terms over row n-1, for X = P (or Q).

    For member 'Q' the roles of P and Q are exchanged, the two recurrences being symmetric.

    Raises:
        LemmaRangeError: k is outside 1..n-2
    """
    if not 1 <= k <= n - 2:
        raise LemmaRangeError(f"Type A decomposition needs 1 <= k <= n-2, got n={n}, k={k}")
    _check_rows(pq, n)
    own, other, member = _members(pq, member)

    def x(i):
        return own.value(n - 1, i)

    def y(i):
        return other.value(n - 1, i)

    terms = (
        (k * k - 1) * (y(k) ** 2 - y(k + 1) * y(k - 1)),
        y(k) ** 2 + y(k - 1) ** 2 - 2 * y(k - 1) * y(k),
        ((n - k) ** 2 - 1) * (y(k - 1) ** 2 - y(k) * y(k - 2)),
        x(k) ** 2 - x(k + 1) * x(k - 1),
        (k + 1) * (n - k + 1) * (y(k) * y(k - 1) - y(k + 1) * y(k - 2)),
        (k - 1) * (n - k - 1) * (y(k - 1) * y(k) - y(k - 1) * y(k)),
        (n - k - 1) * (y(k - 1) * x(k) - y(k) * x(k - 1)),
        (n - k + 1) * (y(k - 1) * x(k) - y(k - 2) * x(k + 1)),
        2 * k * y(k) * x(k) - (k + 1) * y(k + 1) * x(k - 1) - (k - 1) * y(k - 1) * x(k + 1),
    )
    lhs = own.value(n, k) ** 2 - own.value(n, k + 1) * own.value(n, k - 1)
    return TiDecomposition(n, k, member, terms, lhs)


def ti_decomposition_b(pqb: PairTable, n: int, k: int, member: str = 'P') -> TiDecomposition:
    """
    Type B analogue over the B_n^+ / B_n^- split.

    Raises:
        LemmaRangeError: k is outside 1..n-1
    """
    if not 1 <= k <= n - 1:
        raise LemmaRangeError(f"Type B decomposition needs 1 <= k <= n-1, got n={n}, k={k}")
    _check_rows(pqb, n)
    own, other, member = _members(pqb, member)

    def x(i):
        return own.value(n - 1, i)

    def y(i):
        return other.value(n - 1, i)

    m = 2 * n - 2 * k
    terms = (
        4 * (k * k - 1) * (y(k) ** 2 - y(k + 1) * y(k - 1)),
        4 * y(k) ** 2 + 4 * y(k - 1) ** 2 - 8 * y(k - 1) * y(k),
        ((m + 1) ** 2 - 4) * (y(k - 1) ** 2 - y(k) * y(k - 2)),
        x(k) ** 2 - x(k + 1) * x(k - 1),
        2 * (k + 1) * (m + 3) * (y(k) * y(k - 1) - y(k + 1) * y(k - 2)),
        2 * (k - 1) * (m - 1) * (y(k - 1) * y(k) - y(k - 1) * y(k)),
        (m - 1) * (y(k - 1) * x(k) - y(k) * x(k - 1)),
        (m + 3) * (y(k - 1) * x(k) - y(k - 2) * x(k + 1)),
        4 * k * y(k) * x(k) - 2 * (k + 1) * y(k + 1) * x(k - 1) - 2 * (k - 1) * y(k - 1) * x(k + 1),
    )
    lhs = own.value(n, k) ** 2 - own.value(n, k + 1) * own.value(n, k - 1)
    return TiDecomposition(n, k, member, terms, lhs)


# Witness codes used by proof_step_audit
RESIDUAL_NONZERO = 0
SQUARE_TERM_NEGATIVE = 1
FIRST_GROUP_NEGATIVE = 2
SECOND_GROUP_NEGATIVE = 3
K1_BOUND_FAILED = 4


def proof_step_audit(pair: PairTable, n_max: int, family: str = 'A') -> PropertyReport:
    """
    Evaluate the sign facts the inductive argument relies on.

    Checks, for every valid (n, k) up to n_max: residual 0 and T_2 >= 0; for odd k with
    3 <= k <= n-2: T_1 + T_5 + T_7 >= 0 and T_4 + T_6 + T_8 + T_9 >= 0. For type A it
    also checks the k = 1 bound P_{n-1,1} = A_{n-2,1} >= n-1 for n >= 5.

    Returns:
        PropertyReport: witnesses are (n, k, code) with the codes defined in this module
    """
    family = family.upper()
    decompose = ti_decomposition_a if family == 'A' else ti_decomposition_b
    k_last = (lambda n: n - 2) if family == 'A' else (lambda n: n - 1)
    witnesses = []
    for n in range(3 if family == 'A' else 2, n_max + 1):
        for k in range(1, k_last(n) + 1):
            d = decompose(pair, n, k)
            if d.residual != 0:
                witnesses.append((n, k, RESIDUAL_NONZERO))
            if d.term(2) < 0:
                witnesses.append((n, k, SQUARE_TERM_NEGATIVE))
            if k % 2 == 1 and 3 <= k <= n - 2:
                if d.term(1) + d.term(5) + d.term(7) < 0:
                    witnesses.append((n, k, FIRST_GROUP_NEGATIVE))
                if d.term(4) + d.term(6) + d.term(8) + d.term(9) < 0:
                    witnesses.append((n, k, SECOND_GROUP_NEGATIVE))
        if family == 'A' and n >= 5 and pair.first.value(n - 1, 1) < n - 1:
            witnesses.append((n, 1, K1_BOUND_FAILED))
    return PropertyReport(f'proof-steps-{family}', witnesses)


def boundary_remarks(n_max: int) -> PropertyReport:
    """
    Boundary values: A_{n,1} = 2A_{n-1,1} + n - 1, A_{n,1} >= n + 1 for n >= 3, P_{n,0} = 1, Q_{n,0} = 0.

    Witnesses are (n, code): 1 recurrence at k = 1, 2 lower bound, 3 P_{n,0}, 4 Q_{n,0}.
    """
    euler = eulerian_a(n_max)
    pair = pq_a(n_max)
    witnesses = []
    for n in range(1, n_max + 1):
        a1 = euler.value(n, 1)
        if n >= 2 and a1 != 2 * euler.value(n - 1, 1) + n - 1:
            witnesses.append((n, 1))
        if n >= 3 and a1 < n + 1:
            witnesses.append((n, 2))
        if pair.first.value(n, 0) != 1:
            witnesses.append((n, 3))
        if pair.second.value(n, 0) != 0:
            witnesses.append((n, 4))
    return PropertyReport('boundary-remarks', witnesses)


# Gamma expansions

def gamma_reconstruct(gamma, degree: int) -> ExactSeq:
    """Coefficients of sum_i gamma_i t^i (1+t)^(degree - 2i), lowest degree first."""
    polynomial = expand(sum(g * t ** i * (1 + t) ** (degree - 2 * i) for i, g in enumerate(gamma)))
    coeffs = Poly(polynomial, t).all_coeffs()[::-1] if polynomial != 0 else [0]
    coeffs = [int(c) for c in coeffs]
    return ExactSeq(tuple(coeffs + [0] * (degree + 1 - len(coeffs))))


def gamma_vector(row, degree: int) -> Tuple[int, ...]:
    """
    Gamma coefficients of a palindromic polynomial of the given degree.

    Peels off gamma_i t^i (1+t)^(degree-2i) from the lowest remaining coefficient upward.

    Raises:
        ValueError: The row is not palindromic of that degree
    """
    coeffs = [int(v) for v in row] + [0] * (degree + 1 - len(row))
    if len(coeffs) != degree + 1 or coeffs != coeffs[::-1]:
        raise ValueError(f"{tuple(row)} is not palindromic of degree {degree}")
    remainder = Poly(sum(c * t ** i for i, c in enumerate(coeffs)), t)
    gamma = []
    for i in range(degree // 2 + 1):
        g = remainder.coeff_monomial(t ** i)
        gamma.append(int(g))
        remainder = remainder - Poly(g * t ** i * (1 + t) ** (degree - 2 * i), t)
    if not remainder.is_zero:
        raise ValueError(f"Gamma expansion of {tuple(row)} left remainder {remainder.as_expr()}")
    return tuple(gamma)


def gamma_reconstruction_failures(n_max: int) -> List[Tuple[int, int]]:
    """(n, family code) where a gamma row does not expand back to its Eulerian row; 0 type A, 1 type B."""
    witnesses = []
    euler_a, euler_b = eulerian_a(n_max), eulerian_b(n_max)
    tri_a, tri_b = gamma_a(n_max), gamma_b(n_max)
    for n in range(1, n_max + 1):
        if gamma_reconstruct(tri_a.row(n), n - 1) != euler_a.row(n):
            witnesses.append((n, 0))
        if gamma_reconstruct(tri_b.row(n), n) != euler_b.row(n):
            witnesses.append((n, 1))
    return witnesses


def stirling_row_sum(n: int) -> int:
    """(2n-1)!!, the number of Stirling permutations of order n."""
    total = 1
    for odd in range(1, 2 * n, 2):
        total *= odd
    return total
