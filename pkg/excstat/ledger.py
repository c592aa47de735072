# ledger.py
# Optional persistence of RunReports into the verification_runs / verification_results tables.

import json
import logging
from datetime import datetime

import pandas as pd
from sqlalchemy import create_engine
from sqlalchemy.orm import Session, sessionmaker

from excstat.reports import RunReport
from models.verification import Base, VerificationResult, VerificationRun

logger = logging.getLogger(__name__)


def open_session(url: str) -> Session:
    """Create the ledger tables if needed and return a session bound to `url`."""
    try:
        engine = create_engine(url)
        Base.metadata.create_all(engine)
    except Exception as e:
        logger.error(f"Error opening ledger database {url}: {str(e)}")
        raise
    return sessionmaker(bind=engine)()


def save_report(report: RunReport, session: Session) -> VerificationRun:
    """
    Store a RunReport and its per-target results.

    Args:
        report (RunReport): The finished report
        session (Session): SQLAlchemy database session

    Returns:
        VerificationRun: The persisted run row
    """
    try:
        run = VerificationRun(
            command=report.command,
            params=json.dumps(report.params, sort_keys=True),
            verdict=report.verdict,
            run_time=datetime.now(),
            elapsed_seconds=report.elapsed,
            version=report.version,
        )
        run.results = [
            VerificationResult(
                target=r.target,
                n=r.n,
                verdict=r.verdict,
                witnesses=json.dumps([list(w) for w in r.witnesses]),
                detail=r.detail or None,
            ) for r in report.results
        ]
        session.add(run)
        session.commit()

        logger.info(f"Saved {report.command} run {run.id} with {len(run.results)} results to the ledger.")
        return run

    except Exception as e:
        session.rollback()
        logger.error(f"Error saving {report.command} run to the ledger: {str(e)}")
        raise


def load_results(session: Session) -> pd.DataFrame:
    """Every stored result joined with its run, newest run first."""
    query = (
        session.query(
            VerificationRun.id.label('run_id'),
            VerificationRun.command,
            VerificationRun.run_time,
            VerificationResult.target,
            VerificationResult.n,
            VerificationResult.verdict,
            VerificationResult.witnesses,
        )
        .join(VerificationResult, VerificationResult.run_id == VerificationRun.id)
        .order_by(VerificationRun.id.desc(), VerificationResult.id)
    )
    return pd.read_sql(query.statement, session.bind)
