# reports.py
# RunReport and the CSV/JSON renderers behind the command line. Sequence values are
# always rendered as decimal strings; indices stay JSON integers.

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

import pandas as pd

from excstat.common import VERSION
from excstat.recurrence import PairTable, TriangularArray
from excstat.sagan import Certificate

logger = logging.getLogger(__name__)

INTEGERS_AS = 'decimal-strings'
EVIDENCE_NOTE = 'evidence, not proof'


@dataclass
class TargetResult:
    target: str
    n: Optional[int]
    verdict: bool
    witnesses: List[Tuple[int, ...]] = field(default_factory=list)
    detail: str = ''

    def to_dict(self) -> Dict[str, Any]:
        entry = {
            'target': self.target,
            'n': self.n,
            'verdict': self.verdict,
            'witnesses': [[int(i) for i in w] for w in self.witnesses],
        }
        if self.detail:
            entry['detail'] = self.detail
        return entry


@dataclass
class RunReport:
    """Outcome of one verify, conjecture or certify invocation."""

    command: str
    params: Dict[str, Any]
    results: List[TargetResult] = field(default_factory=list)
    elapsed: Optional[float] = None
    notes: List[str] = field(default_factory=list)
    version: str = VERSION

    @property
    def verdict(self) -> bool:
        return all(r.verdict for r in self.results)

    def failures(self) -> List[TargetResult]:
        return [r for r in self.results if not r.verdict]

    def to_dict(self, timing: bool = True) -> Dict[str, Any]:
        report = {
            'command': self.command,
            'params': self.params,
            'results': [r.to_dict() for r in self.results],
            'verdict': self.verdict,
            'integers_as': INTEGERS_AS,
            'version': self.version,
        }
        if self.notes:
            report['notes'] = list(self.notes)
        if timing and self.elapsed is not None:
            report['elapsed_seconds'] = round(self.elapsed, 6)
        return report

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2) + '\n'

    def to_frame(self) -> pd.DataFrame:
        """One row per result; witnesses flattened to 'a:b;c:d' text."""
        return pd.DataFrame(
            [
                {
                    'target': r.target,
                    'n': '' if r.n is None else r.n,
                    'verdict': 'pass' if r.verdict else 'fail',
                    'witnesses': ';'.join(':'.join(str(i) for i in w) for w in r.witnesses),
                }
                for r in self.results
            ],
            columns=['target', 'n', 'verdict', 'witnesses'],
        )

    def to_csv(self) -> str:
        return self.to_frame().to_csv(index=False, lineterminator='\n')


def table_frame(table: Union[TriangularArray, PairTable]) -> pd.DataFrame:
    frame = table.to_frame()
    frame['value'] = frame['value'].map(str)
    return frame


def table_csv(table: Union[TriangularArray, PairTable]) -> str:
    """`n,k,value` lines (with a leading `series` column for pair tables), LF endings."""
    return frame_csv(table_frame(table))


def frame_json(frame: pd.DataFrame, params: Dict[str, Any]) -> str:
    """Rows of an `n,k,value` frame as JSON objects; n and k stay integers."""
    rows = []
    for record in frame.to_dict(orient='records'):
        row = {key: (int(value) if key in ('n', 'k') else value) for key, value in record.items()}
        rows.append(row)
    payload = {
        'command': 'table',
        'params': params,
        'rows': rows,
        'integers_as': INTEGERS_AS,
        'version': VERSION,
    }
    return json.dumps(payload, indent=2) + '\n'


def table_json(table: Union[TriangularArray, PairTable], params: Dict[str, Any]) -> str:
    return frame_json(table_frame(table), params)


def sequence_frame(n: int, row, k_offset: int = 0) -> pd.DataFrame:
    """A single enumerated row in the `n,k,value` layout."""
    return pd.DataFrame(
        [(n, j + k_offset, str(v)) for j, v in enumerate(row)],
        columns=['n', 'k', 'value'],
    )


def frame_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, lineterminator='\n')


def certificate_dict(certificate: Certificate) -> Dict[str, Any]:
    """Certificate summary; every witness point is listed with its evaluated inequality."""
    failing = [certificate.point(n, k) for n, k in certificate.witnesses]
    return {
        'rule': certificate.rule_name,
        'condition': certificate.condition.value,
        'verdict': certificate.verdict,
        'n_max_checked': certificate.n_max_checked,
        'uniform': certificate.uniform,
        'points_checked': len(certificate.points),
        'witnesses': [
            {'n': p.n, 'k': p.k, 'left': p.left, 'relation': p.relation, 'right': p.right}
            for p in failing
        ],
        'inequalities': certificate.displays()[:10],
    }


def certificate_report(certificate: Certificate, params: Dict[str, Any],
                       elapsed: Optional[float] = None) -> RunReport:
    result = TargetResult(
        target=f"{certificate.condition.value}:{certificate.rule_name}",
        n=certificate.n_max_checked,
        verdict=certificate.verdict,
        witnesses=list(certificate.witnesses),
        detail='; '.join(certificate.displays()[:3]),
    )
    return RunReport('certify', params, [result], elapsed)


def certificate_json(certificate: Certificate, params: Dict[str, Any],
                     elapsed: Optional[float] = None, timing: bool = True) -> str:
    report = certificate_report(certificate, params, elapsed).to_dict(timing)
    report['certificate'] = certificate_dict(certificate)
    return json.dumps(report, indent=2) + '\n'
