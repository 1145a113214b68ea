import os

import pytest

from nilorbit.verify import suite_names, theorem_suite


def require_full_run():
    if not os.getenv("NILORBIT_FULL_SUITES"):
        pytest.skip("NILORBIT_FULL_SUITES not set")


@pytest.mark.parametrize("name", suite_names())
def test_canonical_suite(name):
    require_full_run()
    workers = int(os.getenv("NILORBIT_WORKERS", "0")) or os.cpu_count() or 1
    report = theorem_suite(name, workers=workers)
    assert report.passed, (report.failures, report.contradictions)
