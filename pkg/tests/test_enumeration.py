import pytest
from excstat.common import EnumerationLimitError, ExactSeq, StatisticMismatchError
from excstat.enumeration import (
    ClassFilterA,
    ClassFilterB,
    class_size_a,
    class_size_b,
    distribution_a,
    distribution_b,
    distribution_by_parity,
    equidistribution_check,
    row_length,
    second_order_distribution,
    stirling_descents,
    stirling_permutations,
)
from excstat.permstat import StatisticId


def test_type_a_rows(pq_rows):
    assert distribution_a(3, StatisticId.DES) == ExactSeq.of(1, 4, 1)
    assert distribution_a(3, StatisticId.EXC) == ExactSeq.of(1, 4, 1)
    assert distribution_a(4, StatisticId.DES) == ExactSeq.of(1, 11, 11, 1)

    # even permutations by excedances give P_n, odd give Q_n
    for n, (p, q) in pq_rows.items():
        assert distribution_a(n, StatisticId.EXC, ClassFilterA.EVEN) == p, f"P_{n} mismatch"
        assert distribution_a(n, StatisticId.EXC, ClassFilterA.ODD) == q, f"Q_{n} mismatch"

    # 231 and 312 are the derangements of [3]; both have one descent
    assert distribution_a(3, StatisticId.DES, ClassFilterA.DERANGEMENT) == ExactSeq.of(0, 2, 0)


def test_type_b_rows(pqb_rows):
    assert distribution_b(2, StatisticId.DES_B) == ExactSeq.of(1, 6, 1)
    assert distribution_b(3, StatisticId.EXC_B) == ExactSeq.of(1, 23, 23, 1)
    for n, (p, q) in pqb_rows.items():
        assert distribution_b(n, StatisticId.EXC_B, ClassFilterB.PLUS) == p, f"P^B_{n} mismatch"
        assert distribution_b(n, StatisticId.EXC_B, ClassFilterB.MINUS) == q, f"Q^B_{n} mismatch"

    inv_row = distribution_b(3, StatisticId.INV_B)
    assert len(inv_row) == 10
    assert sum(inv_row) == 48
    assert inv_row[0] == 1 and inv_row[9] == 1, "Identity and longest element are unique"


def test_row_sums_match_class_sizes():
    for f in ClassFilterA:
        assert sum(distribution_a(5, StatisticId.INV, f)) == class_size_a(5, f), f"Class {f.value}"
    for f in ClassFilterB:
        assert sum(distribution_b(3, StatisticId.NEGS, f)) == class_size_b(3, f), f"Class {f.value}"
    assert class_size_a(4, ClassFilterA.DERANGEMENT) == 9
    assert class_size_a(1, ClassFilterA.ODD) == 0
    assert class_size_b(3, ClassFilterB.PLUS) == 24


def test_row_lengths():
    assert row_length(4, StatisticId.EXC) == 4
    assert row_length(4, StatisticId.NEXC) == 5
    assert row_length(4, StatisticId.INV) == 7
    assert row_length(3, StatisticId.INV_B) == 10
    assert row_length(3, StatisticId.EXC_B) == 4


def test_parity_split_in_one_pass(pq_rows):
    even, odd = distribution_by_parity(4, StatisticId.EXC)
    assert (even, odd) == pq_rows[4]
    plus, minus = distribution_by_parity(2, StatisticId.EXC_B)
    assert plus == ExactSeq.of(1, 2, 1)
    assert minus == ExactSeq.of(0, 4, 0)


def test_workers_do_not_change_rows():
    serial = distribution_a(6, StatisticId.DES, workers=1)
    parallel = distribution_a(6, StatisticId.DES, workers=2)
    assert serial == parallel
    assert serial == ExactSeq.of(1, 57, 302, 302, 57, 1)
    assert distribution_a(6, StatisticId.DES, ClassFilterA.DERANGEMENT) == ExactSeq.of(0, 16, 104, 120, 24, 1)


def test_statistic_group_mismatch():
    with pytest.raises(StatisticMismatchError):
        distribution_a(3, StatisticId.EXC_B)
    with pytest.raises(StatisticMismatchError):
        distribution_b(3, StatisticId.DES)
    with pytest.raises(ValueError):
        distribution_a(0, StatisticId.DES)


def test_enumeration_guard(monkeypatch):
    monkeypatch.setenv('EXCSTAT_ENUM_LIMIT_A', '3')
    with pytest.raises(EnumerationLimitError) as excinfo:
        distribution_a(4, StatisticId.DES)
    assert excinfo.value.limit == 3
    assert "EXCSTAT_ALLOW_LARGE" in str(excinfo.value)

    assert distribution_a(4, StatisticId.DES, allow_large=True) == ExactSeq.of(1, 11, 11, 1)

    monkeypatch.setenv('EXCSTAT_ALLOW_LARGE', '1')
    assert distribution_a(4, StatisticId.DES) == ExactSeq.of(1, 11, 11, 1)


def test_default_guard_rejects_large_b():
    with pytest.raises(EnumerationLimitError):
        distribution_b(10, StatisticId.DES_B)


def test_equidistribution():
    for n in range(1, 6):
        report = equidistribution_check(n)
        assert report.verdict, f"des and exc should agree for n={n}: {report.detail}"


def test_stirling_permutations():
    words = list(stirling_permutations(2))
    assert sorted(words) == [(1, 1, 2, 2), (1, 2, 2, 1), (2, 2, 1, 1)]
    assert len(list(stirling_permutations(4))) == 105
    assert stirling_descents((1, 2, 2, 1)) == 2
    assert stirling_descents((1, 1, 2, 2)) == 1
    assert second_order_distribution(2) == ExactSeq.of(1, 2)
    assert second_order_distribution(3) == ExactSeq.of(1, 8, 6)
    with pytest.raises(ValueError):
        next(stirling_permutations(0))


def test_stirling_guard_is_separate_from_type_a():
    # order 9 is within the S_n guard but far above the Stirling one
    with pytest.raises(EnumerationLimitError) as excinfo:
        second_order_distribution(9)
    assert excinfo.value.limit == 8
    assert "Stirling" in str(excinfo.value)


def test_stirling_guard_env_override(monkeypatch):
    monkeypatch.setenv('EXCSTAT_ENUM_LIMIT_STIRLING', '2')
    with pytest.raises(EnumerationLimitError):
        second_order_distribution(3)
    assert second_order_distribution(3, allow_large=True) == ExactSeq.of(1, 8, 6)
    # the S_n guard is unaffected
    assert distribution_a(3, StatisticId.DES) == ExactSeq.of(1, 4, 1)


def test_nonpositive_sizes_are_rejected():
    with pytest.raises(ValueError):
        distribution_by_parity(0, StatisticId.EXC)
    with pytest.raises(ValueError):
        distribution_by_parity(0, StatisticId.EXC_B)
    with pytest.raises(ValueError):
        second_order_distribution(0)
