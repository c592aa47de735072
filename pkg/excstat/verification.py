# verification.py
# Named verification and conjecture-scan targets. Each target runs up to n_max
# and returns TargetResults whose witnesses start with n.

import logging
import time
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from excstat.common import ExactSeq, alternating_binomial_row, check_enumeration_guard, load_settings
from excstat.enumeration import (
    ClassFilterA,
    ClassFilterB,
    distribution_a,
    distribution_b,
    distribution_by_parity,
    equidistribution_check,
    second_order_distribution,
)
from excstat.permstat import StatisticId
from excstat.properties import (
    PropertyReport,
    RatioPattern,
    interlacing_check,
    is_log_concave,
    is_ratio_alternating,
    is_strongly_synchronised,
    is_synchronised,
    is_unimodal,
    min_max_criterion_check,
    ratio_alternating_equivalence_check,
    s_family_all_log_concave,
)
from excstat.recurrence import (
    FAMILY_BUILDERS,
    FamilyId,
    PairTable,
    boundary_remarks,
    difference_identity_failures,
    eulerian_a,
    eulerian_b,
    gamma_reconstruction_failures,
    pq_a,
    pq_b,
    proof_step_audit,
    second_order_eulerian,
    stirling_row_sum,
    ti_decomposition_a,
    ti_decomposition_b,
)
from excstat.reports import EVIDENCE_NOTE, RunReport, TargetResult
from excstat.sagan import (
    APPLICATION_PRESETS,
    PRESETS,
    AffineCoeff,
    CoeffRule,
    KRange,
    build_triangle,
    certify_modified_sagan,
    sagan_implies_modified,
)

logger = logging.getLogger(__name__)

# Descent rows of S_6 and its derangements, and the triples separating the pair notions
A6 = ExactSeq.of(1, 57, 302, 302, 57, 1)
D6 = ExactSeq.of(0, 16, 104, 120, 24, 1)
SYNC_CHAIN = (ExactSeq.of(1, 4, 5), ExactSeq.of(1, 5, 10), ExactSeq.of(1, 6, 25))
MIXED_TRIPLE = (ExactSeq.of(1, 5, 3), ExactSeq.of(7, 6, 3), ExactSeq.of(6, 6, 4))
RATIO_CHAIN = (ExactSeq.of(1, 5, 7), ExactSeq.of(3, 4, 10), ExactSeq.of(2, 6, 8))


@dataclass(frozen=True)
class Target:
    name: str
    description: str
    run: Callable[[int], List[TargetResult]]
    default_n_max: int
    # guard group ('A', 'B' or 'Q') bounding n_max; None for recurrence-only targets
    enumerates: Optional[str] = None


def _group_by_n(target: str, n_max: int, witnesses: Iterable[Tuple[int, ...]],
                start: int = 1) -> List[TargetResult]:
    """Split (n, ...) witnesses into one result per n in start..n_max."""
    by_n: Dict[int, List[Tuple[int, ...]]] = {n: [] for n in range(start, n_max + 1)}
    for w in witnesses:
        by_n.setdefault(w[0], []).append(tuple(w))
    return [TargetResult(target, n, not ws, ws) for n, ws in sorted(by_n.items())]


def _prefixed(n: int, report: PropertyReport) -> List[Tuple[int, ...]]:
    return [(n,) + tuple(w) for w in report.witnesses]


def _pair_rows(pair: PairTable, n_max: int, check) -> List[Tuple[int, ...]]:
    witnesses = []
    for n in range(1, n_max + 1):
        witnesses += _prefixed(n, check(*pair.row(n)))
    return witnesses


def strong_sync_a(n_max: int) -> List[TargetResult]:
    return _group_by_n('strong-sync-a', n_max, _pair_rows(pq_a(n_max), n_max, is_strongly_synchronised))


def strong_sync_b(n_max: int) -> List[TargetResult]:
    return _group_by_n('strong-sync-b', n_max, _pair_rows(pq_b(n_max), n_max, is_strongly_synchronised))


def mantaci_identity(n_max: int) -> List[TargetResult]:
    return _group_by_n('mantaci-identity', n_max, difference_identity_failures(pq_a(n_max), shift=1))


def signed_mantaci_identity(n_max: int) -> List[TargetResult]:
    return _group_by_n('signed-mantaci-identity', n_max, difference_identity_failures(pq_b(n_max), shift=0))


def _residual_witnesses(pair: PairTable, n_max: int, decompose, k_last) -> List[Tuple[int, ...]]:
    witnesses = []
    for n in range(2, n_max + 1):
        for k in range(1, k_last(n) + 1):
            for member in ('P', 'Q'):
                if decompose(pair, n, k, member).residual != 0:
                    witnesses.append((n, k))
    return sorted(set(witnesses))


def ti_decomp_a(n_max: int) -> List[TargetResult]:
    witnesses = _residual_witnesses(pq_a(n_max), n_max, ti_decomposition_a, lambda n: n - 2)
    return _group_by_n('ti-decomp-A', n_max, witnesses)


def ti_decomp_b(n_max: int) -> List[TargetResult]:
    witnesses = _residual_witnesses(pq_b(n_max), n_max, ti_decomposition_b, lambda n: n - 1)
    return _group_by_n('ti-decomp-B', n_max, witnesses)


def proof_steps_a(n_max: int) -> List[TargetResult]:
    return _group_by_n('proof-steps-A', n_max, proof_step_audit(pq_a(n_max), n_max, 'A').witnesses)


def proof_steps_b(n_max: int) -> List[TargetResult]:
    return _group_by_n('proof-steps-B', n_max, proof_step_audit(pq_b(n_max), n_max, 'B').witnesses)


def boundary_values(n_max: int) -> List[TargetResult]:
    return _group_by_n('boundary-remarks', n_max, boundary_remarks(n_max).witnesses)


def s_family_pq(n_max: int) -> List[TargetResult]:
    """
    Every mixed sequence of (P_n, Q_n) and (P^B_n, Q^B_n) is log-concave.

    Decided by the min/max criterion; rows short enough for the exhaustive cap are
    also scanned directly and the two verdicts compared.
    """
    cap = load_settings()['exhaustive_cap']
    witnesses = []
    for code, pair in ((0, pq_a(n_max)), (1, pq_b(n_max))):
        for n in range(1, n_max + 1):
            first, second = pair.row(n)
            witnesses += [(n, code) + w for w in is_strongly_synchronised(first, second).witnesses]
            if 2 ** len(first) <= cap and not min_max_criterion_check(first, second, cap).verdict:
                witnesses.append((n, code, -1))
    return _group_by_n('log-concave-s-family', n_max, witnesses)


def unimodal_rows(n_max: int) -> List[TargetResult]:
    """P, Q, P^B, Q^B rows are unimodal; witness (n, member 0..3, index)."""
    witnesses = []
    for offset, pair in ((0, pq_a(n_max)), (2, pq_b(n_max))):
        for n in range(1, n_max + 1):
            for j, row in enumerate(pair.row(n)):
                witnesses += [(n, offset + j) + w for w in is_unimodal(row).witnesses]
    return _group_by_n('unimodal-pq', n_max, witnesses)


def ratio_alternating_pq(n_max: int) -> List[TargetResult]:
    """(P_n, Q_n) and (P^B_n, Q^B_n) follow the even-dominating pattern and the parity equivalence holds."""
    witnesses = []
    for code, pair in ((0, pq_a(n_max)), (1, pq_b(n_max))):
        for n in range(1, n_max + 1):
            first, second = pair.row(n)
            _, pattern = is_ratio_alternating(first, second)
            if pattern not in (RatioPattern.PATTERN23, RatioPattern.BOTH):
                witnesses.append((n, code, 23))
                continue
            witnesses += [(n, code) + w for w in ratio_alternating_equivalence_check(first, second).witnesses]
    return _group_by_n('ratio-alternating-pq', n_max, witnesses)


def equidistribution(n_max: int) -> List[TargetResult]:
    results = []
    for n in range(1, n_max + 1):
        report = equidistribution_check(n)
        results.append(TargetResult('equidistribution', n, report.verdict, _prefixed(n, report), report.detail))
    return results


def _row_mismatches(n: int, code: int, computed: ExactSeq, enumerated: ExactSeq) -> List[Tuple[int, ...]]:
    return [(n, code, k) for k in range(max(len(computed), len(enumerated)))
            if computed.get(k) != enumerated.get(k)]


def oracle_a(n_max: int) -> List[TargetResult]:
    """Recurrence rows against brute force: P/Q by exc over even/odd, Eulerian by des."""
    pair, euler = pq_a(n_max), eulerian_a(n_max)
    witnesses = []
    for n in range(1, n_max + 1):
        first, second = pair.row(n)
        witnesses += _row_mismatches(n, 0, first, distribution_a(n, StatisticId.EXC, ClassFilterA.EVEN))
        witnesses += _row_mismatches(n, 1, second, distribution_a(n, StatisticId.EXC, ClassFilterA.ODD))
        witnesses += _row_mismatches(n, 2, euler.row(n), distribution_a(n, StatisticId.DES))
    return _group_by_n('oracle-a', n_max, witnesses)


def oracle_b(n_max: int) -> List[TargetResult]:
    pair, euler = pq_b(n_max), eulerian_b(n_max)
    witnesses = []
    for n in range(1, n_max + 1):
        first, second = pair.row(n)
        witnesses += _row_mismatches(n, 0, first, distribution_b(n, StatisticId.EXC_B, ClassFilterB.PLUS))
        witnesses += _row_mismatches(n, 1, second, distribution_b(n, StatisticId.EXC_B, ClassFilterB.MINUS))
        witnesses += _row_mismatches(n, 2, euler.row(n), distribution_b(n, StatisticId.DES_B))
    return _group_by_n('oracle-b', n_max, witnesses)


def desb_plus_bridge(n_max: int) -> List[TargetResult]:
    """Descents over B_n^+ coincide with the excedance row P^B_n."""
    pair = pq_b(n_max)
    witnesses = []
    for n in range(1, n_max + 1):
        enumerated = distribution_b(n, StatisticId.DES_B, ClassFilterB.PLUS)
        witnesses += _row_mismatches(n, 0, pair.first.row(n), enumerated)
    return _group_by_n('desb-plus-bridge', n_max, witnesses)


def reiner_identity(n_max: int) -> List[TargetResult]:
    """B^+_{n,k} - B^-_{n,k} = (-1)^k C(n,k) over des_B."""
    witnesses = []
    for n in range(1, n_max + 1):
        plus, minus = distribution_by_parity(n, StatisticId.DES_B)
        expected = alternating_binomial_row(n, len(plus))
        witnesses += [(n, k) for k in range(len(plus)) if plus[k] - minus[k] != expected[k]]
    return _group_by_n('reiner-identity', n_max, witnesses)


def second_order_oracle(n_max: int) -> List[TargetResult]:
    """Second-order Eulerian rows against Stirling permutations; code -1 flags a wrong row sum."""
    triangle = second_order_eulerian(n_max)
    witnesses = []
    for n in range(1, n_max + 1):
        row = triangle.row(n)
        witnesses += _row_mismatches(n, 0, row, second_order_distribution(n))
        if sum(row) != stirling_row_sum(n):
            witnesses.append((n, 0, -1))
    return _group_by_n('second-order-oracle', n_max, witnesses)


def gamma_reconstruction(n_max: int) -> List[TargetResult]:
    return _group_by_n('gamma-reconstruction', n_max, gamma_reconstruction_failures(n_max))


def sagan_applications(n_max: int) -> List[TargetResult]:
    """
    The five application presets certify under the square-root condition, rebuild their
    family row for row, and every built row is log-concave.
    """
    results = []
    for name in APPLICATION_PRESETS:
        rule = PRESETS[name]
        certificate = certify_modified_sagan(rule, n_max)
        built = build_triangle(rule, n_max)
        family = FAMILY_BUILDERS[FamilyId(rule.family)](n_max)
        witnesses = [(n, k, 0) for n, k in certificate.witnesses]
        for n in range(1, n_max + 1):
            if built.row(n) != family.row(n):
                witnesses.append((n, -1, 1))
            witnesses += [(n, k, 2) for (k,) in is_log_concave(built.row(n)).witnesses]
        detail = f"{name}: {', '.join(certificate.displays()[:2])}"
        results.append(TargetResult('sagan-applications', n_max, not witnesses, witnesses, detail))
    return results


def counterexamples(n_max: int) -> List[TargetResult]:
    """
    The sequence examples separating the notions; each check is numbered and a failing
    check is reported as its number.
    """
    a, b, c = SYNC_CHAIN
    t1, t2, t3 = MIXED_TRIPLE
    r1, r2, r3 = RATIO_CHAIN
    strong_a6 = is_strongly_synchronised(A6, D6)
    family = s_family_all_log_concave(list(MIXED_TRIPLE))
    checks = [
        is_synchronised(A6, D6).verdict,
        strong_a6.witnesses[:1] == [(1,)],
        D6[1] ** 2 < A6[0] * A6[2],
        is_strongly_synchronised(a, b).verdict and is_strongly_synchronised(b, c).verdict,
        not is_synchronised(a, c).verdict and not is_strongly_synchronised(a, c).verdict,
        all(is_strongly_synchronised(x, y).verdict for x, y in ((t1, t2), (t1, t3), (t2, t3))),
        not family.verdict and family.counterexample == ExactSeq.of(7, 5, 4),
        is_ratio_alternating(r1, r2)[0].verdict and is_ratio_alternating(r2, r3)[0].verdict,
        not is_ratio_alternating(r1, r3)[0].verdict,
        min_max_criterion_check(A6, D6).verdict,
        not interlacing_check(a, c).verdict,
    ]
    failing = [(i,) for i, ok in enumerate(checks, start=1) if not ok]
    return [TargetResult('counterexamples', None, not failing, failing)]


def _random_pairs(rng: np.random.Generator, samples: int, max_length: int):
    for _ in range(samples):
        length = int(rng.integers(3, max_length + 1))
        yield (ExactSeq(tuple(int(v) for v in rng.integers(0, 101, size=length))),
               ExactSeq(tuple(int(v) for v in rng.integers(0, 101, size=length))))


def min_max_random(n_max: int) -> List[TargetResult]:
    """Exhaustive family verdict against the min/max criterion on seeded random pairs of length 3..n_max."""
    settings = load_settings()
    rng = np.random.default_rng(settings['random_seed'])
    disagreements = []
    for i, (a, b) in enumerate(_random_pairs(rng, settings['random_samples'], max(3, n_max))):
        if not min_max_criterion_check(a, b).verdict:
            disagreements.append((i,))
    detail = f"{settings['random_samples']} pairs, seed {settings['random_seed']}"
    return [TargetResult('min-max-random', n_max, not disagreements, disagreements, detail)]


def sagan_implication_random(n_max: int) -> List[TargetResult]:
    """Product bound implies the square-root condition on seeded random affine rules."""
    settings = load_settings()
    rng = np.random.default_rng(settings['random_seed'])
    samples = max(1, settings['random_samples'] // 10)
    failures = []
    for i in range(samples):
        c = AffineCoeff(*(int(v) for v in rng.integers(-3, 4, size=3)))
        d = AffineCoeff(*(int(v) for v in rng.integers(-3, 4, size=3)))
        rule = CoeffRule(f'random-{i}', c, d, ExactSeq.of(1), KRange(0, 1, -1, 1))
        if not sagan_implies_modified(rule, n_max).verdict:
            failures.append((i,))
    return [TargetResult('sagan-implication-random', n_max, not failures, failures, f"{samples} rules")]


def descent_parity(n_max: int) -> List[TargetResult]:
    """Descent rows over A_n and its complement are strongly synchronised."""
    witnesses = []
    for n in range(1, n_max + 1):
        even, odd = distribution_by_parity(n, StatisticId.DES)
        witnesses += _prefixed(n, is_strongly_synchronised(even, odd))
    return _group_by_n('descent-parity', n_max, witnesses)


def descent_excedance(n_max: int) -> List[TargetResult]:
    """Descents over A_n against P_n, and over the complement against Q_n; witness (n, 0|1, k)."""
    pair = pq_a(n_max)
    witnesses = []
    for n in range(1, n_max + 1):
        even, odd = distribution_by_parity(n, StatisticId.DES)
        first, second = pair.row(n)
        witnesses += [(n, 0) + w for w in is_strongly_synchronised(even, first).witnesses]
        witnesses += [(n, 1) + w for w in is_strongly_synchronised(odd, second).witnesses]
    return _group_by_n('descent-excedance', n_max, witnesses)


VERIFY_TARGETS: Dict[str, Target] = {
    target.name: target for target in (
        Target('strong-sync-a', "P_n and Q_n are strongly synchronised", strong_sync_a, 50),
        Target('strong-sync-b', "P^B_n and Q^B_n are strongly synchronised", strong_sync_b, 50),
        Target('mantaci-identity', "P_n - Q_n = (-1)^k C(n-1,k)", mantaci_identity, 100),
        Target('signed-mantaci-identity', "P^B_n - Q^B_n = (-1)^k C(n,k)", signed_mantaci_identity, 100),
        Target('ti-decomp-A', "nine-term decomposition residuals vanish (type A)", ti_decomp_a, 40),
        Target('ti-decomp-B', "nine-term decomposition residuals vanish (type B)", ti_decomp_b, 40),
        Target('proof-steps-A', "sign facts of the inductive step (type A)", proof_steps_a, 40),
        Target('proof-steps-B', "sign facts of the inductive step (type B)", proof_steps_b, 40),
        Target('boundary-remarks', "boundary values of A_{n,1}, P_{n,0}, Q_{n,0}", boundary_values, 50),
        Target('log-concave-s-family', "all mixed sequences of the P/Q pairs are log-concave", s_family_pq, 14),
        Target('unimodal-pq', "P, Q, P^B, Q^B rows are unimodal", unimodal_rows, 50),
        Target('ratio-alternating-pq', "P/Q pairs are ratio-alternating with the parity equivalence",
               ratio_alternating_pq, 50),
        Target('equidistribution', "des and exc agree over S_n and B_n", equidistribution, 6, 'B'),
        Target('oracle-a', "type A recurrences match brute force", oracle_a, 9, 'A'),
        Target('oracle-b', "type B recurrences match brute force", oracle_b, 7, 'B'),
        Target('desb-plus-bridge', "des_B over B_n^+ equals P^B_n", desb_plus_bridge, 6, 'B'),
        Target('reiner-identity', "B^+ - B^- over des_B is (-1)^k C(n,k)", reiner_identity, 6, 'B'),
        Target('second-order-oracle', "second-order Eulerian rows match Stirling permutations",
               second_order_oracle, 7, 'Q'),
        Target('gamma-reconstruction', "gamma rows expand back to the Eulerian rows", gamma_reconstruction, 20),
        Target('sagan-applications', "application presets certify and rebuild their families",
               sagan_applications, 30),
        Target('counterexamples', "separating examples reproduce", counterexamples, 1),
        Target('min-max-random', "min/max criterion agrees with exhaustive scans on random pairs",
               min_max_random, 10),
        Target('sagan-implication-random', "product bound implies the square-root condition",
               sagan_implication_random, 10),
    )
}

CONJECTURE_TARGETS: Dict[str, Target] = {
    target.name: target for target in (
        Target('descent-parity', "descents over A_n and S_n - A_n are strongly synchronised",
               descent_parity, 9, 'A'),
        Target('descent-excedance', "descents over A_n (S_n - A_n) and P_n (Q_n) are strongly synchronised",
               descent_excedance, 9, 'A'),
    )
}

# Short command names, each resolving to a registered target
VERIFY_ALIASES: Dict[str, str] = {
    'thm-1.5': 'strong-sync-a',
    'thm-1.6': 'strong-sync-b',
}

CONJECTURE_ALIASES: Dict[str, str] = {
    'c61': 'descent-parity',
    'c62': 'descent-excedance',
}


def resolve_target(name: str, conjecture: bool = False) -> Target:
    """Look a target up by its registered name or one of its aliases."""
    registry = CONJECTURE_TARGETS if conjecture else VERIFY_TARGETS
    aliases = CONJECTURE_ALIASES if conjecture else VERIFY_ALIASES
    name = aliases.get(name, name)
    if name not in registry:
        raise KeyError(f"Unknown {'conjecture' if conjecture else 'verify'} target: {name}")
    return registry[name]


def run_target(name: str, n_max: Optional[int] = None, conjecture: bool = False) -> RunReport:
    """
    Run one named target and wrap its results.

    The report's params carry the name as given, so an alias is echoed back unchanged.

    Raises:
        KeyError: Unknown target name
        EnumerationLimitError: A brute-force target was asked for n above the guard
    """
    target = resolve_target(name, conjecture)
    n_max = target.default_n_max if n_max is None else n_max
    if n_max < 1:
        raise ValueError(f"n_max must be positive, got {n_max}")
    if target.enumerates:
        check_enumeration_guard(n_max, target.enumerates)
    started = time.perf_counter()
    results = target.run(n_max)
    elapsed = time.perf_counter() - started
    report = RunReport(
        'conjecture' if conjecture else 'verify',
        {'target': name, 'max_n': n_max},
        results,
        elapsed,
        notes=[EVIDENCE_NOTE] if conjecture else [],
    )
    failures = report.failures()
    if failures:
        logger.warning(f"Target {name} failed for {len(failures)} of {len(results)} results")
    else:
        logger.info(f"Target {name} passed up to n={n_max} in {elapsed:.2f}s")
    return report
