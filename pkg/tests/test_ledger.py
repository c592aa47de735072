import json
import pytest
from excstat.ledger import load_results, open_session, save_report
from excstat.reports import RunReport, TargetResult
from excstat.verification import run_target
from models.verification import VerificationResult, VerificationRun


def test_save_report(in_memory_db):
    report = run_target('signed-mantaci-identity', 5)
    run = save_report(report, in_memory_db)

    # Query the database to check the run was stored
    stored = in_memory_db.query(VerificationRun).filter_by(id=run.id).one()
    assert stored.command == 'verify', "Command should be stored"
    assert stored.verdict is True, "Verdict should be stored as a boolean"
    assert json.loads(stored.params) == {'max_n': 5, 'target': 'signed-mantaci-identity'}
    assert len(stored.results) == 5, "One result row per n"

    for record in stored.results:
        assert isinstance(record.n, int), "n should be an integer"
        assert json.loads(record.witnesses) == [], "Passing results carry no witnesses"


def test_failing_witnesses_round_trip(in_memory_db):
    report = RunReport('verify', {'target': 'demo'}, [TargetResult('demo', 4, False, [(4, 2, 1)])])
    save_report(report, in_memory_db)
    record = in_memory_db.query(VerificationResult).filter_by(target='demo').one()
    assert json.loads(record.witnesses) == [[4, 2, 1]]
    assert record.run.verdict is False


def test_load_results(in_memory_db):
    frame = load_results(in_memory_db)
    assert list(frame.columns) == ['run_id', 'command', 'run_time', 'target', 'n', 'verdict', 'witnesses']
    assert frame['run_id'].iloc[0] == frame['run_id'].max(), "Newest run first"
    assert 'signed-mantaci-identity' in set(frame['target'])


def test_invalid_report_rolls_back(in_memory_db):
    before = in_memory_db.query(VerificationRun).count()
    report = RunReport('verify', {'target': 'bad'}, [TargetResult(None, 1, True)])
    with pytest.raises(Exception):
        save_report(report, in_memory_db)
    assert in_memory_db.query(VerificationRun).count() == before, "Failed insert should be rolled back"


def test_open_session_creates_tables(tmp_path):
    session = open_session(f"sqlite:///{tmp_path / 'ledger.db'}")
    try:
        assert session.query(VerificationRun).count() == 0
    finally:
        session.close()
