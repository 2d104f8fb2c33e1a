"""One pass/fail line per acceptance criterion, printed even under capture."""

import pytest

from padic_lab.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("k", range(1, len(CRITERIA) + 1))
def test_criterion(k, capsys):
    out = run_criterion(k, seed=0)
    with capsys.disabled():
        print(f"\n{out.line()} ({out.seconds:.1f}s)")
    assert out.passed, out.line()
