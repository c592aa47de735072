import pytest
from math import factorial
from excstat.common import ExactSeq, LemmaRangeError
from excstat.recurrence import (
    FamilyId,
    PairTable,
    TriangularArray,
    boundary_remarks,
    build_family,
    difference_identity_failures,
    eulerian_a,
    eulerian_b,
    gamma_a,
    gamma_b,
    gamma_reconstruct,
    gamma_reconstruction_failures,
    gamma_vector,
    pq_a,
    pq_b,
    proof_step_audit,
    second_order_eulerian,
    stirling_row_sum,
    ti_decomposition_a,
    ti_decomposition_b,
)


def test_eulerian_rows():
    euler = eulerian_a(6)
    assert euler.row(1) == ExactSeq.of(1)
    assert euler.row(4) == ExactSeq.of(1, 11, 11, 1)
    assert euler.row(6) == ExactSeq.of(1, 57, 302, 302, 57, 1)
    assert euler.value(6, 6) == 0, "Out-of-range k reads as 0"
    assert euler.value(7, 0) == 0
    with pytest.raises(IndexError):
        euler.row(7)

    euler_b = eulerian_b(6)
    assert euler_b.row(1) == ExactSeq.of(1, 1)
    assert euler_b.row(2) == ExactSeq.of(1, 6, 1)
    assert euler_b.row(4) == ExactSeq.of(1, 76, 230, 76, 1)
    for n in range(1, 7):
        assert sum(euler_b.row(n)) == 2 ** n * factorial(n), f"B_{n} row sum"


def test_pq_rows(pq_rows, pqb_rows):
    pair = pq_a(6)
    for n, expected in pq_rows.items():
        assert pair.row(n) == expected, f"Row {n}"
    assert pair.first.family == 'P' and pair.second.family == 'Q'
    euler = eulerian_a(6)
    for n in range(1, 7):
        p, q = pair.row(n)
        assert tuple(x + y for x, y in zip(p, q)) == euler.row(n).values, "P_n + Q_n = A_n"

    pair_b = pq_b(5)
    assert pair_b.row(1) == (ExactSeq.of(1, 0), ExactSeq.of(0, 1))
    for n, expected in pqb_rows.items():
        assert pair_b.row(n) == expected, f"Row {n}"
    # row 5 entries used by the decomposition below
    assert pair_b.first.row(5)[2:5] == (846, 836, 121)


def test_second_order_and_gamma_rows():
    h = second_order_eulerian(6)
    assert h.k_offset == 1
    assert h.row(2) == ExactSeq.of(1, 2)
    assert h.row(3) == ExactSeq.of(1, 8, 6)
    assert h.value(3, 1) == 1 and h.value(3, 3) == 6 and h.value(3, 0) == 0
    for n in range(1, 7):
        assert sum(h.row(n)) == stirling_row_sum(n)
    assert [stirling_row_sum(n) for n in range(1, 5)] == [1, 3, 15, 105]

    assert gamma_a(4).row(3) == ExactSeq.of(1, 2)
    assert gamma_a(4).row(4) == ExactSeq.of(1, 8)
    assert gamma_b(3).row(2) == ExactSeq.of(1, 4)
    assert gamma_b(3).row(3) == ExactSeq.of(1, 20)


def test_build_family():
    table = build_family(FamilyId.PQ_B, 3)
    assert isinstance(table, PairTable)
    assert isinstance(build_family('gammaA', 3), TriangularArray)
    assert FamilyId.parse('EULERA') == FamilyId.EULER_A
    with pytest.raises(ValueError):
        FamilyId.parse('narayana')
    with pytest.raises(ValueError):
        eulerian_a(0)


def test_frames_keep_exact_integers():
    frame = eulerian_a(30).to_frame()
    assert list(frame.columns) == ['n', 'k', 'value']
    assert frame['value'].dtype == object
    last = frame[(frame['n'] == 30) & (frame['k'] == 15)]['value'].iloc[0]
    assert last == eulerian_a(30).value(30, 15)
    assert last > 2 ** 63, "Row 30 entries exceed int64"

    pair_frame = pq_a(3).to_frame()
    assert list(pair_frame.columns) == ['series', 'n', 'k', 'value']
    assert set(pair_frame['series']) == {'P', 'Q'}


def test_difference_identities():
    assert difference_identity_failures(pq_a(40), shift=1) == []
    assert difference_identity_failures(pq_b(40), shift=0) == []
    # the wrong shift is caught
    assert difference_identity_failures(pq_a(4), shift=0) != []


def test_type_a_decomposition():
    pair = pq_a(5)
    d = ti_decomposition_a(pair, 5, 2)
    assert d.terms == (27, 9, 392, 49, 336, 0, 66, 196, 100)
    assert d.lhs == 36 ** 2 - 11 * 11
    assert d.residual == 0

    assert ti_decomposition_a(pq_a(4), 4, 1).term(6) == 0
    assert ti_decomposition_a(pair, 5, 3, member='Q').residual == 0

    with pytest.raises(LemmaRangeError):
        ti_decomposition_a(pair, 5, 4)
    with pytest.raises(LemmaRangeError):
        ti_decomposition_a(pair, 5, 0)


def test_type_a_residuals_vanish():
    pair = pq_a(25)
    for n in range(3, 26):
        for k in range(1, n - 1):
            for member in ('P', 'Q'):
                d = ti_decomposition_a(pair, n, k, member)
                assert d.residual == 0, f"Residual at n={n}, k={k}, {member}"
                assert d.term(2) >= 0


def test_type_b_decomposition():
    pair = pq_b(5)
    d = ti_decomposition_b(pair, 5, 3)
    assert d.terms == (51200, 20736, 229824, 1178, 250880, 0, -2064, 27944, 16832)
    assert d.lhs == 596530
    assert d.residual == 0
    assert d.term(1) + d.term(5) + d.term(7) > 0
    assert d.term(4) + d.term(6) + d.term(8) + d.term(9) > 0

    assert ti_decomposition_b(pq_b(4), 4, 2).residual == 0
    assert ti_decomposition_b(pair, 5, 4, member='QB').residual == 0
    with pytest.raises(LemmaRangeError):
        ti_decomposition_b(pair, 5, 5)
    with pytest.raises(ValueError):
        ti_decomposition_b(pq_b(3), 5, 2)


def test_proof_step_audit_has_no_witnesses():
    for family, pair in (('A', pq_a(40)), ('B', pq_b(40))):
        report = proof_step_audit(pair, 40, family)
        assert report.verdict, f"{family}: {report.witnesses[:5]}"
        assert report.witnesses == []


@pytest.mark.slow
def test_proof_step_audit_has_no_witnesses_to_sixty():
    assert proof_step_audit(pq_a(60), 60, 'A').verdict
    assert proof_step_audit(pq_b(60), 60, 'B').verdict


def test_boundary_remarks():
    assert boundary_remarks(40).verdict
    euler = eulerian_a(10)
    assert [euler.value(n, 1) for n in range(2, 7)] == [2 ** n - n - 1 for n in range(2, 7)]


def test_gamma_expansions():
    assert gamma_vector((1, 4, 1), 2) == (1, 2)
    assert gamma_vector((1, 2, 1), 2) == (1, 0)
    assert gamma_vector((1, 11, 11, 1), 3) == (1, 8)
    assert gamma_reconstruct((1, 4), 2) == ExactSeq.of(1, 6, 1)
    assert gamma_reconstruct((1,), 0) == ExactSeq.of(1)
    with pytest.raises(ValueError):
        gamma_vector((1, 4, 2), 2)
    assert gamma_reconstruction_failures(20) == []

    # gamma rows built by recurrence equal the gamma vectors peeled from the Eulerian rows
    euler, gammas = eulerian_a(9), gamma_a(9)
    for n in range(1, 10):
        assert gamma_vector(euler.row(n), n - 1) == gammas.row(n).values
