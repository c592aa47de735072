#!/usr/bin/env python3
"""
Master script to run every verification target and print a summary of verdicts.
"""

import json
import os
import subprocess
import sys
from datetime import datetime

from excstat.verification import VERIFY_TARGETS

REPORT_DIR = 'reports'


def run_verification(target, max_n=None):
    """Run a single target through the command line and return (exit code, parsed report)."""
    print(f"\n{'='*60}")
    print(f"Running {target}...")
    print(f"{'='*60}")

    command = [sys.executable, '-m', 'excstat.cli', 'verify', target, '--no-timing']
    if max_n is not None:
        command += ['--max-n', str(max_n)]
    try:
        result = subprocess.run(command, capture_output=True, text=True, timeout=600)
    except subprocess.TimeoutExpired:
        print("❌ TIMEOUT - Target took too long")
        return None, None

    if result.returncode not in (0, 1):
        print(f"❌ ERROR (exit {result.returncode})")
        print(result.stderr)
        return result.returncode, None

    report = json.loads(result.stdout)
    os.makedirs(REPORT_DIR, exist_ok=True)
    with open(os.path.join(REPORT_DIR, f'{target}.json'), 'w') as f:
        f.write(result.stdout)

    if result.returncode == 0:
        print(f"✅ PASS ({len(report['results'])} results)")
    else:
        failing = [r for r in report['results'] if not r['verdict']]
        print(f"❌ FAIL ({len(failing)} of {len(report['results'])} results)")
        for r in failing[:5]:
            print(f"  n={r['n']}: {r['witnesses'][:5]}")
    return result.returncode, report


def main():
    print("🚀 Starting all verification targets...")
    print(f"Timestamp: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")

    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else None
    outcomes = {target: run_verification(target, max_n)[0] for target in VERIFY_TARGETS}

    print(f"\n{'='*60}")
    print("FINAL SUMMARY")
    print(f"{'='*60}")

    passed = sum(1 for code in outcomes.values() if code == 0)
    total = len(outcomes)
    for target, code in outcomes.items():
        mark = '✅' if code == 0 else '❌'
        print(f"{mark} {target}")
    print(f"\nTargets passed: {passed}/{total}")

    if passed == total:
        print("🎉 All targets verified!")
    else:
        print("⚠️  Some targets failed. Check the output above for details.")
    print(f"\n📁 Reports saved in: {REPORT_DIR}/")
    return 0 if passed == total else 1


if __name__ == "__main__":
    sys.exit(main())
