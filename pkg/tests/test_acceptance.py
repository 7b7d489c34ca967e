"""Acceptance gate: every criterion at its stated tolerance and budget.

One test per criterion; each prints a PASS/FAIL line with its runtime so the
suite can be read as a report (`pytest -s tests/test_acceptance.py`).
"""

import time

import pytest

from entronet import acceptance


@pytest.mark.parametrize(
    "number,title,fn,budget",
    acceptance.CRITERIA,
    ids=[f"criterion_{num}_{fn.__name__}" for num, _, fn, _ in acceptance.CRITERIA],
)
def test_criterion(number, title, fn, budget):
    t0 = time.time()
    ok, detail = fn()
    elapsed = time.time() - t0
    status = "PASS" if (ok and elapsed < budget) else "FAIL"
    print(f"{status} criterion {number} ({elapsed:.2f}s < {budget:g}s): {title} -- {detail}")
    assert ok, f"criterion {number} failed: {detail}"
    assert elapsed < budget, f"criterion {number} exceeded its budget: {elapsed:.2f}s"
