"""Acceptance criteria 1-13, each run exactly once at seed 0.

Every criterion prints one ``[PASS]``/``[FAIL]`` line; the lines are also
collected and repeated in the pytest terminal summary.  Run this file directly
(``python tests/test_acceptance.py``) for the lines alone.
"""

import sys

import pytest

from repalg.verify import CRITERIA, run_criterion

SEED = 0
RESULTS: list[str] = []


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    res = run_criterion(k, SEED)
    line = res.line()
    RESULTS.append(line)
    print(line)
    failed = {key: val for key, val in res.details.items() if val != "pass" and not key.startswith("note")}
    assert res.passed, f"criterion {k} failed: {failed}"


def test_all_criteria_present():
    assert sorted(CRITERIA) == list(range(1, 14))


if __name__ == "__main__":
    bad = 0
    for k in sorted(CRITERIA):
        res = run_criterion(k, SEED)
        print(res.line(), flush=True)
        bad += not res.passed
    sys.exit(1 if bad else 0)
