"""One test per acceptance criterion, each at its stated tolerance and time budget.

A summary with one PASS/FAIL line per criterion is printed at the end of the
session (see conftest.py); ``prep-atlas verify-paper`` prints the same lines.
"""
import pytest

from prepatlas.verify import CHECKS, run_check

RESULTS = {}


@pytest.mark.parametrize("number", [num for num, *_ in CHECKS], ids=[f"criterion{num}" for num, *_ in CHECKS])
def test_criterion(number):
    result = run_check(number)
    RESULTS[number] = result
    print(result.line())
    assert result.passed, result.detail
