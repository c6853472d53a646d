"""Every acceptance criterion at its stated tolerance and runtime limit.

Each test prints one PASS/FAIL line; the lines are collected again in the
terminal summary.
"""

import pytest

from motzeta.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, acceptance_line):
    result = run_criterion(number)
    line = result.line()
    print(line)
    acceptance_line(line)
    assert result.passed, line
