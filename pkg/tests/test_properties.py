import pytest
from math import comb
from hypothesis import given, settings, strategies as st
from excstat.common import ExactSeq, ExhaustiveCapError, LengthMismatchError, NotApplicableError
from excstat.properties import (
    RatioPattern,
    interlacing_check,
    is_even_log_concave,
    is_log_concave,
    is_odd_log_concave,
    is_ratio_alternating,
    is_strongly_synchronised,
    is_synchronised,
    is_unimodal,
    min_max_criterion_check,
    mixed_sequences,
    ratio_alternating_equivalence_check,
    s_family_all_log_concave,
)
from excstat.verification import A6, D6, MIXED_TRIPLE, RATIO_CHAIN, SYNC_CHAIN


def test_log_concavity():
    assert is_log_concave((1, 3, 1)).verdict
    report = is_log_concave((1, 1, 2))
    assert not report
    assert report.witnesses == [(1,)]
    assert is_log_concave((5,)).verdict, "No interior index, nothing to check"

    # (1, 1, 2, 2, 1): index 1 fails, index 2 and 3 hold
    assert is_odd_log_concave((1, 1, 2, 2, 1)).witnesses == [(1,)]
    assert is_even_log_concave((1, 1, 2, 2, 1)).verdict


def test_unimodal():
    assert is_unimodal((1, 3, 3, 2, 0)).verdict
    assert is_unimodal((4, 3, 2)).verdict
    assert is_unimodal((0, 7, 4, 1)).verdict
    assert is_unimodal((1, 3, 2, 4)).witnesses == [(2,)]


def test_synchronised_descent_rows():
    assert is_synchronised(A6, D6).verdict, "Descent rows of S_6 and its derangements are synchronised"

    strong = is_strongly_synchronised(A6, D6)
    assert strong.witnesses == [(1,), (2,), (3,)]
    assert D6[1] ** 2 < A6[0] * A6[2], "min^2 < max*max at k = 1"


def test_strong_synchronisation_is_not_transitive():
    a, b, c = SYNC_CHAIN
    assert is_strongly_synchronised(a, b).verdict
    assert is_strongly_synchronised(b, c).verdict
    assert not is_strongly_synchronised(a, c).verdict
    assert not is_synchronised(a, c).verdict


def test_pairwise_strong_sync_does_not_extend_to_triples():
    t1, t2, t3 = MIXED_TRIPLE
    for x, y in ((t1, t2), (t1, t3), (t2, t3)):
        assert is_strongly_synchronised(x, y).verdict, f"{x} and {y}"
    report = s_family_all_log_concave(list(MIXED_TRIPLE))
    assert not report.verdict
    assert report.counterexample == ExactSeq.of(7, 5, 4)
    assert report.witnesses == [(1,)]


def test_mixed_sequences_deduplicate_columns():
    mixed = list(mixed_sequences([ExactSeq.of(1, 2, 3), ExactSeq.of(1, 5, 3)]))
    assert mixed == [(1, 2, 3), (1, 5, 3)]


def test_exhaustive_cap():
    with pytest.raises(ExhaustiveCapError) as excinfo:
        s_family_all_log_concave([A6, D6], exhaustive_cap=10)
    assert "is_strongly_synchronised" in str(excinfo.value)
    with pytest.raises(LengthMismatchError):
        s_family_all_log_concave([ExactSeq.of(1, 2), ExactSeq.of(1, 2, 3)])


def test_min_max_criterion():
    report = min_max_criterion_check(A6, D6)
    assert report.verdict, report.detail
    assert report.counterexample is not None, "The descent pair has a non-log-concave mixed sequence"

    a, b, _ = SYNC_CHAIN
    assert min_max_criterion_check(a, b).verdict


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=3, max_value=7).flatmap(
    lambda m: st.tuples(
        st.lists(st.integers(min_value=0, max_value=60), min_size=m, max_size=m),
        st.lists(st.integers(min_value=0, max_value=60), min_size=m, max_size=m),
    )
))
def test_min_max_criterion_on_arbitrary_pairs(pair):
    a, b = pair
    report = min_max_criterion_check(a, b)
    assert report.verdict, f"{a} / {b}: {report.detail}"


def test_ratio_alternation(pq_rows):
    r1, r2, r3 = RATIO_CHAIN
    assert is_ratio_alternating(r1, r2)[1] == RatioPattern.PATTERN22
    assert is_ratio_alternating(r2, r3)[1] == RatioPattern.PATTERN23
    report, pattern = is_ratio_alternating(r1, r3)
    assert pattern == RatioPattern.NEITHER
    assert (22, 1) in report.witnesses and (23, 0) in report.witnesses

    p5, q5 = pq_rows[5]
    assert is_ratio_alternating(p5, q5)[1] == RatioPattern.PATTERN23
    assert is_ratio_alternating((1, 2), (1, 2))[1] == RatioPattern.BOTH


def test_ratio_alternating_equivalence(pq_rows):
    # pattern22; neither side holds, so the equivalence is satisfied
    report = ratio_alternating_equivalence_check((0, 1, 0), (1, 0, 2))
    assert report.verdict, report.detail

    p5, q5 = pq_rows[5]
    assert ratio_alternating_equivalence_check(p5, q5).verdict

    r1, _, r3 = RATIO_CHAIN
    with pytest.raises(NotApplicableError):
        ratio_alternating_equivalence_check(r1, r3)


def test_interlacing():
    a, b, c = SYNC_CHAIN
    assert interlacing_check(a, b).verdict
    report = interlacing_check(a, c)
    assert (1, 1, 1) in report.witnesses
    assert report.hypothesis_met

    zero_inside = interlacing_check((1, 0, 1), (1, 0, 1))
    assert not zero_inside.hypothesis_met


def test_length_mismatch():
    with pytest.raises(LengthMismatchError):
        is_strongly_synchronised((1, 2, 3), (1, 2))
    with pytest.raises(ValueError):
        is_log_concave((1, -1, 2))


# C(m,i) x^i y^(m-i) is positive and log-concave; zero padding keeps it so
log_concave_rows = st.builds(
    lambda m, x, y, lead, trail: (0,) * lead + tuple(comb(m, i) * x ** i * y ** (m - i) for i in range(m + 1))
    + (0,) * trail,
    st.integers(min_value=0, max_value=6),
    st.integers(min_value=1, max_value=5),
    st.integers(min_value=1, max_value=5),
    st.integers(min_value=0, max_value=2),
    st.integers(min_value=0, max_value=2),
)

small_pairs = st.integers(min_value=1, max_value=7).flatmap(
    lambda m: st.tuples(
        st.lists(st.integers(min_value=0, max_value=6), min_size=m, max_size=m),
        st.lists(st.integers(min_value=0, max_value=6), min_size=m, max_size=m),
    )
)


@given(log_concave_rows)
def test_log_concave_without_internal_zeros_is_unimodal(row):
    seq = ExactSeq(row)
    assert is_log_concave(seq).verdict
    assert not seq.has_internal_zero()
    assert is_unimodal(seq).verdict


@given(st.lists(st.integers(min_value=0, max_value=9), min_size=1, max_size=8))
def test_unimodality_follows_from_log_concavity(values):
    seq = ExactSeq(tuple(values))
    if is_log_concave(seq).verdict and not seq.has_internal_zero():
        assert is_unimodal(seq).verdict, values


def test_internal_zero_breaks_unimodality():
    seq = ExactSeq.of(1, 0, 0, 1)
    assert seq.has_internal_zero()
    assert is_log_concave(seq).verdict
    assert not is_unimodal(seq).verdict


@given(small_pairs)
def test_strong_synchronisation_implies_synchronisation(pair):
    a, b = pair
    if is_strongly_synchronised(a, b).verdict:
        assert is_synchronised(a, b).verdict, pair


@given(log_concave_rows)
def test_log_concave_row_is_synchronised_with_itself(row):
    assert is_strongly_synchronised(row, row).verdict
    assert is_synchronised(row, row).verdict


@given(small_pairs)
def test_pair_predicates_are_symmetric(pair):
    a, b = pair
    assert is_synchronised(a, b).witnesses == is_synchronised(b, a).witnesses
    assert is_strongly_synchronised(a, b).witnesses == is_strongly_synchronised(b, a).witnesses
    assert interlacing_check(a, b).witnesses == interlacing_check(b, a).witnesses

    forward, pattern = is_ratio_alternating(a, b)
    backward, swapped = is_ratio_alternating(b, a)
    assert forward.verdict == backward.verdict
    mirror = {
        RatioPattern.PATTERN22: RatioPattern.PATTERN23,
        RatioPattern.PATTERN23: RatioPattern.PATTERN22,
        RatioPattern.BOTH: RatioPattern.BOTH,
        RatioPattern.NEITHER: RatioPattern.NEITHER,
    }
    assert swapped == mirror[pattern]


@given(st.lists(st.integers(min_value=0, max_value=12), min_size=1, max_size=8))
def test_self_synchronisation_is_log_concavity(values):
    assert is_strongly_synchronised(values, values).witnesses == is_log_concave(values).witnesses


@given(small_pairs)
def test_interlacing_at_adjacent_indices_is_strong_synchronisation(pair):
    a, b = pair
    adjacent = [(j,) for j, l, i in interlacing_check(a, b).witnesses if j == l and i == 1]
    assert adjacent == is_strongly_synchronised(a, b).witnesses
