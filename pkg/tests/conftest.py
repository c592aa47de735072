import pytest
from pathlib import Path
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker
from excstat.common import ExactSeq
from models.verification import Base

RULES_DIR = Path(__file__).resolve().parent.parent / 'rules'


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: brute-force enumeration above n = 6')


# Fixture for setting up an in-memory SQLite ledger
@pytest.fixture(scope='module')
def in_memory_db():
    engine = create_engine('sqlite:///:memory:')
    Base.metadata.create_all(engine)  # Create tables
    Session = sessionmaker(bind=engine)
    session = Session()
    yield session
    session.close()


# Settings come from the environment; keep every test on the defaults
@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    for name in ('EXCSTAT_ENUM_LIMIT_A', 'EXCSTAT_ENUM_LIMIT_B', 'EXCSTAT_EXHAUSTIVE_CAP',
                 'EXCSTAT_WORKERS', 'EXCSTAT_ALLOW_LARGE', 'EXCSTAT_RANDOM_SAMPLES'):
        monkeypatch.delenv(name, raising=False)


# Rows of the even/odd excedance split, worked out by hand from the recurrences
@pytest.fixture(scope='module')
def pq_rows():
    return {
        3: (ExactSeq.of(1, 1, 1), ExactSeq.of(0, 3, 0)),
        4: (ExactSeq.of(1, 4, 7, 0), ExactSeq.of(0, 7, 4, 1)),
        5: (ExactSeq.of(1, 11, 36, 11, 1), ExactSeq.of(0, 15, 30, 15, 0)),
    }


@pytest.fixture(scope='module')
def pqb_rows():
    return {
        2: (ExactSeq.of(1, 2, 1), ExactSeq.of(0, 4, 0)),
        3: (ExactSeq.of(1, 10, 13, 0), ExactSeq.of(0, 13, 10, 1)),
        4: (ExactSeq.of(1, 36, 118, 36, 1), ExactSeq.of(0, 40, 112, 40, 0)),
    }


@pytest.fixture
def rules_dir():
    return RULES_DIR
