"""The thirteen acceptance criteria, one test each.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per
criterion; ``shadowjones verify`` prints the same lines.
"""

import pytest

from shadowjones.verify import CHECKS, run_check


@pytest.mark.parametrize("check", CHECKS, ids=[f"{c.number:02d}-{c.name.replace(' ', '-')}" for c in CHECKS])
def test_acceptance(check):
    result = run_check(check)
    print(result.line())
    assert result.passed, result.detail
