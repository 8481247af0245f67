"""Acceptance gate: one test per numbered behavioural criterion.

Each test delegates to the packaged acceptance runner at its stated
tolerance, prints the same one-line verdict the ``weakkam selftest``
command emits, and asserts the verdict.  Nothing is loosened here: a
criterion whose stated expectation the implementation cannot meet
fails this suite, with the measured numbers in the assertion message.
"""

import pytest

import weakkam.acceptance as acceptance

_IDS = [f"{n:02d}-{acceptance.CRITERION_NAMES[n]}"
        for n in sorted(acceptance.CRITERION_NAMES)]


@pytest.mark.parametrize("number", sorted(acceptance.CRITERION_NAMES),
                         ids=_IDS)
def test_criterion(number):
    res = acceptance.run_criterion(number)
    print(res.line)
    assert res.passed, res.detail
