"""The ten acceptance criteria, one test each.

Every check prints a single [PASS]/[FAIL] line; thresholds live in
lamesusy.acceptance and are fixed there.
"""

import pytest

from lamesusy.acceptance import CHECKS, _timed


@pytest.mark.parametrize("number,title,fn,budget", CHECKS, ids=[f"criterion_{c[0]:02d}" for c in CHECKS])
def test_criterion(number, title, fn, budget, acceptance_log):
    res = _timed(number, title, fn, budget)
    print(res.line())
    acceptance_log.append((number, res.line()))
    assert res.passed, res.line()


def test_all_ten_criteria_are_covered():
    assert [c[0] for c in CHECKS] == list(range(1, 11))
