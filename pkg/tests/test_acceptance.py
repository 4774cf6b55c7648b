"""Acceptance criteria, each run at its stated time limit.

Run with ``pytest -s tests/test_acceptance.py`` to see the one-line verdicts;
they are also written to the terminal summary at the end of any run.
"""

import pytest

from qsocle.acceptance import CRITERIA, run_criterion

RESULTS: list[str] = []


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA],
                         ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number):
    res = run_criterion(number)
    RESULTS.append(res.line())
    print(res.line())
    assert res.passed, res.detail
    assert res.seconds < res.limit, f"took {res.seconds:.2f}s, limit {res.limit:g}s"
