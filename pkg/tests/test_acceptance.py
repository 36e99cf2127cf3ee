"""Exit criteria, one test per criterion, at the frozen tolerances in
nmrjj.acceptance.  A PASS/FAIL line per criterion is printed in the pytest
terminal summary (see conftest.py).
"""

import pytest

from nmrjj import acceptance

RESULTS = []


@pytest.mark.parametrize("check", acceptance.CHECKS, ids=lambda c: c.__name__.removeprefix("check_"))
def test_criterion(check):
    result = check()
    RESULTS.append(result)
    print(result.line())
    assert result.passed, result.detail
