"""Run every theorem suite and write one JSON report per suite.

Usage: python scripts/run_suites.py <output-dir> [workers]
"""

import logging
import os
import sys
from pathlib import Path

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from nilorbit.reports import to_json  # noqa: E402
from nilorbit.verify import suite_names, theorem_suite  # noqa: E402

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger("run_suites")

if len(sys.argv) < 2:
    print("Usage: python scripts/run_suites.py <output-dir> [workers]")
    exit(2)

out_dir = Path(sys.argv[1])
workers = int(sys.argv[2]) if len(sys.argv) > 2 else os.cpu_count() or 1
out_dir.mkdir(parents=True, exist_ok=True)

failed = []
for name in suite_names():
    report = theorem_suite(name, workers=workers)
    (out_dir / f"{name}.json").write_text(to_json(report) + "\n")
    logger.info("%s: %s (%.1fs)", name, "pass" if report.passed else "FAIL", report.elapsed)
    if not report.passed:
        failed.append(name)

if failed:
    print(f"Failed suites: {', '.join(failed)}")
    exit(1)
print(f"All {len(suite_names())} suites passed")
