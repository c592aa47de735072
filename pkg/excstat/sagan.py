# sagan.py
# Coefficient rules for triangular recurrences t_{n,k} = c t_{n-1,*} + d t_{n-1,*},
# the triangle builder, and certificates for Sagan's condition and its
# square-root variant.

import configparser
import logging
from dataclasses import dataclass, field
from enum import Enum
from math import isqrt
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from excstat.common import ExactSeq, RuleParseError, RuleViolationError
from excstat.properties import PropertyReport
from excstat.recurrence import FamilyId, TriangularArray

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AffineCoeff:
    """f(n, k) = k_coeff * k + n_coeff * n + const."""

    k_coeff: int = 0
    n_coeff: int = 0
    const: int = 0

    def __call__(self, n: int, k: int) -> int:
        return self.k_coeff * k + self.n_coeff * n + self.const

    def __str__(self) -> str:
        parts = []
        for coeff, var in ((self.k_coeff, 'k'), (self.n_coeff, 'n')):
            if coeff:
                parts.append(f"{coeff}{var}" if abs(coeff) != 1 else ('-' if coeff < 0 else '') + var)
        if self.const or not parts:
            parts.append(str(self.const))
        return '+'.join(parts).replace('+-', '-')


@dataclass(frozen=True)
class KRange:
    """Row n covers k = lo..floor((hi_n * n + hi_const) / hi_div)."""

    lo: int = 0
    hi_n: int = 1
    hi_const: int = 0
    hi_div: int = 1

    def hi(self, n: int) -> int:
        return (self.hi_n * n + self.hi_const) // self.hi_div

    def ks(self, n: int) -> range:
        return range(self.lo, self.hi(n) + 1)


class Pairing(str, Enum):
    # c-unshifted: t_{n,k} = c t_{n-1,k} + d t_{n-1,k-1}, the way the applications print it
    # c-shifted:   t_{n,k} = c t_{n-1,k-1} + d t_{n-1,k}
    C_UNSHIFTED = 'c-unshifted'
    C_SHIFTED = 'c-shifted'


class Condition(str, Enum):
    SAGAN = 'sagan'
    MODIFIED = 'modified'


@dataclass(frozen=True)
class CoeffRule:
    name: str
    c: AffineCoeff
    d: AffineCoeff
    initial_row: ExactSeq
    k_range: KRange = KRange()
    pairing: Pairing = Pairing.C_UNSHIFTED
    family: Optional[str] = None

    def __post_init__(self):
        expected = len(self.k_range.ks(1))
        if len(self.initial_row) != expected:
            raise ValueError(
                f"Rule '{self.name}': initial row {self.initial_row} has {len(self.initial_row)} "
                f"entries, k-range gives {expected} for n=1"
            )


def build_triangle(rule: CoeffRule, n_max: int) -> TriangularArray:
    """
    Generate rows 1..n_max from the rule's initial row; out-of-range terms of row n-1 are 0.

    Raises:
        RuleViolationError: c or d is negative at some (n, k) inside the k-range
    """
    if n_max < 1:
        raise ValueError(f"n_max must be positive, got {n_max}")
    lo = rule.k_range.lo
    rows = [rule.initial_row]
    for n in range(2, n_max + 1):
        previous = rows[-1]
        row = []
        for k in rule.k_range.ks(n):
            c, d = rule.c(n, k), rule.d(n, k)
            for which, value in (('c', c), ('d', d)):
                if value < 0:
                    raise RuleViolationError(rule.name, n, k, which, value)
            same, shifted = previous.get(k - lo), previous.get(k - 1 - lo)
            if rule.pairing == Pairing.C_UNSHIFTED:
                row.append(c * same + d * shifted)
            else:
                row.append(c * shifted + d * same)
        rows.append(ExactSeq(tuple(row)))
    logger.info(f"Built triangle for rule '{rule.name}' up to n={n_max}")
    return TriangularArray(rule.family or rule.name, tuple(rows), lo)


@dataclass(frozen=True)
class CertificatePoint:
    """
    One (n, k) evaluation of a condition.

    `key` is the n-free fingerprint of the point; a certificate is uniform when every
    point shares it.
    """

    n: int
    k: int
    left: str
    relation: str
    right: str
    holds: bool
    key: Tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"{self.left} {self.relation} {self.right}"


@dataclass
class Certificate:
    rule_name: str
    condition: Condition
    witnesses: List[Tuple[int, int]] = field(default_factory=list)
    points: List[CertificatePoint] = field(default_factory=list)
    n_max_checked: int = 0

    @property
    def verdict(self) -> bool:
        return not self.witnesses

    @property
    def uniform(self) -> bool:
        return len({p.key for p in self.points}) <= 1

    def point(self, n: int, k: int) -> CertificatePoint:
        for p in self.points:
            if (p.n, p.k) == (n, k):
                return p
        raise KeyError(f"({n},{k}) was not checked")

    def displays(self) -> List[str]:
        """Distinct rendered inequalities in first-seen order."""
        return list(dict.fromkeys(str(p) for p in self.points))


def _log_concavity_gaps(rule: CoeffRule, n: int, k: int) -> Tuple[int, int]:
    c, d = rule.c, rule.d
    a_gap = c(n, k) ** 2 - c(n, k + 1) * c(n, k - 1)
    b_gap = d(n, k) ** 2 - d(n, k + 1) * d(n, k - 1)
    return a_gap, b_gap


def _sagan_point(rule: CoeffRule, n: int, k: int) -> CertificatePoint:
    c, d = rule.c, rule.d
    a_gap, b_gap = _log_concavity_gaps(rule, n, k)
    lhs = c(n, k - 1) * d(n, k + 1) + c(n, k + 1) * d(n, k - 1)
    rhs = 2 * c(n, k) * d(n, k)
    holds = a_gap >= 0 and b_gap >= 0 and lhs <= rhs
    return CertificatePoint(n, k, str(lhs), '<=', str(rhs), holds, (a_gap, b_gap, rhs - lhs))


def _modified_point(rule: CoeffRule, n: int, k: int) -> CertificatePoint:
    """
    2 sqrt(A B) >= c_{k-1} d_{k+1} + c_{k+1} d_{k-1} - 2 c_k d_k, compared without floats.

    With A, B >= 0 the left side is non-negative, so the inequality holds outright when the
    right side is <= 0 and otherwise iff 4AB >= right^2.
    """
    c, d = rule.c, rule.d
    a_gap, b_gap = _log_concavity_gaps(rule, n, k)
    rhs = c(n, k - 1) * d(n, k + 1) + c(n, k + 1) * d(n, k - 1) - 2 * c(n, k) * d(n, k)
    if a_gap < 0 or b_gap < 0:
        return CertificatePoint(n, k, f"2*sqrt({a_gap * b_gap})", '>=', str(rhs), False, (a_gap, b_gap, rhs))
    radicand = 4 * a_gap * b_gap
    root = isqrt(radicand)
    left = str(root) if root * root == radicand else f"2*sqrt({a_gap * b_gap})"
    holds = rhs <= 0 or radicand >= rhs * rhs
    return CertificatePoint(n, k, left, '>=', str(rhs), holds, (radicand, rhs))


def _certify(rule: CoeffRule, n_max: int, condition: Condition) -> Certificate:
    evaluate = _sagan_point if condition == Condition.SAGAN else _modified_point
    certificate = Certificate(rule.name, condition, n_max_checked=n_max)
    for n in range(1, n_max + 1):
        for k in rule.k_range.ks(n):
            point = evaluate(rule, n, k)
            negative = rule.c(n, k) < 0 or rule.d(n, k) < 0
            if negative:
                point = CertificatePoint(n, k, point.left, point.relation, point.right, False, point.key)
            certificate.points.append(point)
            if not point.holds:
                certificate.witnesses.append((n, k))
    status = 'holds' if certificate.verdict else f"fails at {len(certificate.witnesses)} points"
    logger.info(f"Condition {condition.value} for rule '{rule.name}' up to n={n_max}: {status}")
    return certificate


def certify_sagan(rule: CoeffRule, n_max: int) -> Certificate:
    """
    Check log-concavity of c and d in k and c_{k-1} d_{k+1} + c_{k+1} d_{k-1} <= 2 c_k d_k.

    Coefficients are evaluated through their affine formula at k-1 and k+1 as well, for every
    n in 1..n_max and every k in the row's range.
    """
    return _certify(rule, n_max, Condition.SAGAN)


def certify_modified_sagan(rule: CoeffRule, n_max: int) -> Certificate:
    """Same range as certify_sagan, with the square-root condition in place of the product bound."""
    return _certify(rule, n_max, Condition.MODIFIED)


def certify(rule: CoeffRule, n_max: int, condition: Union[Condition, str]) -> Certificate:
    return _certify(rule, n_max, Condition(condition))


def sagan_implies_modified(rule: CoeffRule, n_max: int) -> PropertyReport:
    """Every point passing the product bound also passes the square-root condition."""
    original = certify_sagan(rule, n_max)
    modified = certify_modified_sagan(rule, n_max)
    witnesses = [
        (p.n, p.k) for p, q in zip(original.points, modified.points)
        if p.holds and not q.holds
    ]
    return PropertyReport('sagan-implies-modified', witnesses)


PRESETS: Dict[str, CoeffRule] = {
    'eulerA': CoeffRule(
        'eulerA', AffineCoeff(1, 0, 1), AffineCoeff(-1, 1, 0), ExactSeq.of(1),
        KRange(0, 1, -1, 1), family=FamilyId.EULER_A.value,
    ),
    'eulerB': CoeffRule(
        'eulerB', AffineCoeff(2, 0, 1), AffineCoeff(-2, 2, 1), ExactSeq.of(1, 1),
        KRange(0, 1, 0, 1), family=FamilyId.EULER_B.value,
    ),
    'secondOrderEuler': CoeffRule(
        'secondOrderEuler', AffineCoeff(1, 0, 0), AffineCoeff(-1, 2, 0), ExactSeq.of(1),
        KRange(1, 1, 0, 1), family=FamilyId.SECOND_ORDER_EULER.value,
    ),
    'gammaA': CoeffRule(
        'gammaA', AffineCoeff(1, 0, 1), AffineCoeff(-4, 2, 0), ExactSeq.of(1),
        KRange(0, 1, -1, 2), family=FamilyId.GAMMA_A.value,
    ),
    'gammaB': CoeffRule(
        'gammaB', AffineCoeff(2, 0, 1), AffineCoeff(-8, 4, 4), ExactSeq.of(1),
        KRange(0, 1, 0, 2), family=FamilyId.GAMMA_B.value,
    ),
    # C(n,k) = C(n-1,k) + C(n-1,k-1)
    'binomial': CoeffRule(
        'binomial', AffineCoeff(0, 0, 1), AffineCoeff(0, 0, 1), ExactSeq.of(1, 1),
        KRange(0, 1, 0, 1),
    ),
    # S(n,k) = k S(n-1,k) + S(n-1,k-1)
    'stirling2': CoeffRule(
        'stirling2', AffineCoeff(1, 0, 0), AffineCoeff(0, 0, 1), ExactSeq.of(1),
        KRange(1, 1, 0, 1),
    ),
    # unsigned c(n,k) = (n-1) c(n-1,k) + c(n-1,k-1)
    'stirling1': CoeffRule(
        'stirling1', AffineCoeff(0, 1, -1), AffineCoeff(0, 0, 1), ExactSeq.of(1),
        KRange(1, 1, 0, 1),
    ),
}

APPLICATION_PRESETS = ('eulerA', 'eulerB', 'secondOrderEuler', 'gammaA', 'gammaB')


def _int_tuple(parser: configparser.ConfigParser, section: str, key: str, size: int) -> Tuple[int, ...]:
    raw = parser.get(section, key)
    try:
        values = tuple(int(v) for v in raw.replace(',', ' ').split())
    except ValueError as e:
        raise RuleParseError(f"[{section}] {key} = {raw!r}: expected integers") from e
    if size and len(values) != size:
        raise RuleParseError(f"[{section}] {key} = {raw!r}: expected {size} integers, got {len(values)}")
    return values


def parse_rule(text: str, source: str = '<string>') -> CoeffRule:
    """
    Parse an INI rule definition.

    Expected keys in the [rule] section: name, c and d as "k_coeff, n_coeff, const",
    initial_row, k_range as "lo, hi_n, hi_const, hi_div" and optionally pairing.

    Raises:
        RuleParseError: Missing section or key, non-integer values or an inconsistent initial row
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=(';', '#'))
    try:
        parser.read_string(text, source=source)
    except configparser.Error as e:
        raise RuleParseError(f"{source}: {e}") from e
    if not parser.has_section('rule'):
        raise RuleParseError(f"{source}: missing [rule] section")
    missing = [key for key in ('name', 'c', 'd', 'initial_row') if not parser.has_option('rule', key)]
    if missing:
        raise RuleParseError(f"{source}: [rule] is missing {', '.join(missing)}")
    c = AffineCoeff(*_int_tuple(parser, 'rule', 'c', 3))
    d = AffineCoeff(*_int_tuple(parser, 'rule', 'd', 3))
    initial = _int_tuple(parser, 'rule', 'initial_row', 0)
    k_range = KRange(*_int_tuple(parser, 'rule', 'k_range', 4)) if parser.has_option('rule', 'k_range') else KRange()
    if k_range.hi_div <= 0:
        raise RuleParseError(f"{source}: k_range divisor must be positive")
    try:
        pairing = Pairing(parser.get('rule', 'pairing', fallback=Pairing.C_UNSHIFTED.value).strip())
        return CoeffRule(parser.get('rule', 'name').strip(), c, d, ExactSeq(initial), k_range, pairing)
    except ValueError as e:
        raise RuleParseError(f"{source}: {e}") from e


def load_rule_file(path: Union[str, Path]) -> CoeffRule:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        logger.error(f"Could not read rule file {path}: {e}")
        raise
    rule = parse_rule(text, source=str(path))
    logger.info(f"Loaded rule '{rule.name}' from {path}")
    return rule
