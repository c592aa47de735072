# cli.py
# Command-line front end: table, verify, conjecture and certify.
# Exit codes: 0 pass, 1 property or certification failure, 2 usage or parse error,
# 3 resource-guard rejection.

import argparse
import logging
import os
import sys
import time
from typing import List, Optional

from excstat.common import (
    VERSION,
    EnumerationLimitError,
    ExhaustiveCapError,
    RuleParseError,
    StatisticMismatchError,
)
from excstat.enumeration import ClassFilterA, ClassFilterB, distribution_a, distribution_b
from excstat.permstat import StatisticId
from excstat.recurrence import FamilyId, build_family
from excstat.reports import (
    EVIDENCE_NOTE,
    RunReport,
    certificate_json,
    certificate_report,
    frame_csv,
    frame_json,
    sequence_frame,
    table_csv,
    table_json,
)
from excstat.sagan import PRESETS, Condition, certify, load_rule_file
from excstat.verification import (
    CONJECTURE_ALIASES,
    CONJECTURE_TARGETS,
    VERIFY_ALIASES,
    VERIFY_TARGETS,
    run_target,
)

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_GUARD = 3

TABLE_SUBJECTS = [f.value for f in FamilyId] + [s.value for s in StatisticId]


def _write(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


def _save(report: RunReport, db_url: Optional[str]) -> None:
    if not db_url:
        return
    from excstat.ledger import open_session, save_report

    session = open_session(db_url)
    try:
        save_report(report, session)
    finally:
        session.close()


def cmd_table(args) -> int:
    """Emit a family triangle (rows 1..n) or one enumerated distribution row."""
    params = {'subject': args.subject, 'n': args.n}
    if args.subject in [f.value for f in FamilyId]:
        if args.cls is not None:
            raise StatisticMismatchError(f"--class applies to statistics, not to the family {args.subject}")
        table = build_family(FamilyId(args.subject), args.n)
        _write(table_csv(table) if args.format == 'csv' else table_json(table, params))
        return EXIT_PASS
    statistic = StatisticId(args.subject)
    cls = args.cls or 'all'
    params['class'] = cls
    allowed = ClassFilterB if statistic.is_type_b else ClassFilterA
    if cls not in [f.value for f in allowed]:
        raise StatisticMismatchError(f"class {cls} does not apply to {statistic.value}")
    if statistic.is_type_b:
        row = distribution_b(args.n, statistic, ClassFilterB(cls))
    else:
        row = distribution_a(args.n, statistic, ClassFilterA(cls))
    frame = sequence_frame(args.n, row)
    _write(frame_csv(frame) if args.format == 'csv' else frame_json(frame, params))
    return EXIT_PASS


def _emit(report: RunReport, args) -> int:
    if args.format == 'csv':
        _write(report.to_csv())
    else:
        _write(report.to_json(timing=not args.no_timing))
    _save(report, args.db)
    for failure in report.failures():
        logger.warning(f"{failure.target} n={failure.n}: witnesses {failure.witnesses[:5]}")
    return EXIT_PASS if report.verdict else EXIT_FAIL


def cmd_verify(args) -> int:
    return _emit(run_target(args.target, args.max_n), args)


def cmd_conjecture(args) -> int:
    report = run_target(args.which, args.max_n, conjecture=True)
    print(f"{args.which}: {EVIDENCE_NOTE}", file=sys.stderr)
    return _emit(report, args)


def cmd_certify(args) -> int:
    rule = PRESETS[args.preset] if args.preset else load_rule_file(args.rule_file)
    params = {
        'rule': rule.name,
        'condition': args.condition,
        'max_n': args.max_n,
    }
    started = time.perf_counter()
    certificate = certify(rule, args.max_n, Condition(args.condition))
    elapsed = time.perf_counter() - started
    _write(certificate_json(certificate, params, elapsed, timing=not args.no_timing))
    _save(certificate_report(certificate, params, elapsed), args.db)
    return EXIT_PASS if certificate.verdict else EXIT_FAIL


def _add_report_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--no-timing', action='store_true', dest='no_timing',
                        help='Omit the elapsed time so output is byte-identical across runs.')
    parser.add_argument('--db', default=None,
                        help='SQLAlchemy URL of a run ledger to append the report to.')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='excstat',
        description='Exact excedance/descent distributions and log-concavity verification.',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {VERSION}')
    parser.add_argument('--allow-large', action='store_true', dest='allow_large',
                        help='Lift the brute-force enumeration guard (same as EXCSTAT_ALLOW_LARGE=1).')
    parser.add_argument('--workers', type=int, default=None,
                        help='Processes for brute-force enumeration (default: EXCSTAT_WORKERS or 1).')
    sub = parser.add_subparsers(dest='command', required=True)

    table = sub.add_parser('table', help='Print a family triangle or an enumerated distribution row.')
    table.add_argument('subject', choices=TABLE_SUBJECTS, help='Family id or statistic tag.')
    table.add_argument('--n', type=int, required=True, help='Last row (family) or group size (statistic).')
    table.add_argument('--class', dest='cls', default=None,
                       choices=[f.value for f in ClassFilterA] + [f.value for f in ClassFilterB][1:],
                       help='Class filter for statistics: all, even, odd, derangement, plus, minus.')
    table.add_argument('--format', choices=['csv', 'json'], default='csv')
    table.set_defaults(handler=cmd_table)

    verify = sub.add_parser('verify', help='Run a named verification target.')
    verify.add_argument('target', choices=sorted(VERIFY_TARGETS) + sorted(VERIFY_ALIASES))
    verify.add_argument('--max-n', type=int, default=None, dest='max_n')
    verify.add_argument('--format', choices=['json', 'csv'], default='json')
    _add_report_options(verify)
    verify.set_defaults(handler=cmd_verify)

    conjecture = sub.add_parser('conjecture', help='Scan a conjecture for counterexamples by brute force.')
    conjecture.add_argument('which', choices=sorted(CONJECTURE_TARGETS) + sorted(CONJECTURE_ALIASES))
    conjecture.add_argument('--max-n', type=int, default=None, dest='max_n')
    conjecture.add_argument('--format', choices=['json', 'csv'], default='json')
    _add_report_options(conjecture)
    conjecture.set_defaults(handler=cmd_conjecture)

    cert = sub.add_parser('certify', help='Certify a coefficient rule for row log-concavity.')
    source = cert.add_mutually_exclusive_group(required=True)
    source.add_argument('--preset', choices=sorted(PRESETS))
    source.add_argument('--rule-file', dest='rule_file')
    cert.add_argument('--condition', choices=[c.value for c in Condition], default=Condition.MODIFIED.value)
    cert.add_argument('--max-n', type=int, default=30, dest='max_n')
    _add_report_options(cert)
    cert.set_defaults(handler=cmd_certify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.allow_large:
        os.environ['EXCSTAT_ALLOW_LARGE'] = '1'
    if args.workers is not None:
        os.environ['EXCSTAT_WORKERS'] = str(args.workers)
    if getattr(args, 'max_n', None) is not None and args.max_n < 1:
        parser.error('--max-n must be positive')
    if getattr(args, 'n', None) is not None and args.n < 1:
        parser.error('--n must be positive')
    try:
        return args.handler(args)
    except EnumerationLimitError as e:
        logger.error(str(e))
        return EXIT_GUARD
    except ExhaustiveCapError as e:
        logger.error(str(e))
        return EXIT_GUARD
    except (RuleParseError, StatisticMismatchError) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
