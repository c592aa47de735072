from sqlalchemy import Boolean, Column, DateTime, Float, ForeignKey, Integer, String, Text
from sqlalchemy.orm import declarative_base, relationship

Base = declarative_base()

class VerificationRun(Base):
    __tablename__ = 'verification_runs'

    id = Column(Integer, primary_key=True)
    command = Column(String(50), nullable=False)
    params = Column(Text, nullable=False)  # JSON
    verdict = Column(Boolean, nullable=False)
    run_time = Column(DateTime, nullable=False)
    elapsed_seconds = Column(Float)
    version = Column(String(20), nullable=False)

    results = relationship('VerificationResult', back_populates='run', cascade='all, delete-orphan')

    def __repr__(self):
        return f"<VerificationRun(id={self.id}, command='{self.command}', verdict={self.verdict})>"


class VerificationResult(Base):
    __tablename__ = 'verification_results'

    id = Column(Integer, primary_key=True)
    run_id = Column(Integer, ForeignKey('verification_runs.id'), nullable=False)
    target = Column(String(100), nullable=False)
    n = Column(Integer)
    verdict = Column(Boolean, nullable=False)
    witnesses = Column(Text, nullable=False)  # JSON list of integer lists
    detail = Column(Text)

    run = relationship('VerificationRun', back_populates='results')

    def __repr__(self):
        return f"<VerificationResult(id={self.id}, target='{self.target}', n={self.n}, verdict={self.verdict})>"
