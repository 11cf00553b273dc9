"""Acceptance suite: every criterion at its stated tolerance.

Runs each criterion once (session cache), prints one pass/fail line per
criterion, and asserts individually so the report shows exactly which
gate failed.  The heavy statistical criteria take a few minutes each.
"""

import pytest

from barlab import acceptance

_ORDER = [
    "identity",
    "rank",
    "indicators",
    "scaling",
    "regime1",
    "sparsity",
    "regime2",
    "regime3",
    "simulators",
    "geometric",
    "palm",
    "determinism",
]

_cache = {}


def _result(name):
    if name not in _cache:
        _cache[name] = acceptance.run(name)[0]
    return _cache[name]


@pytest.mark.parametrize("suite", _ORDER)
def test_criterion(suite, capsys):
    res = _result(suite)
    with capsys.disabled():
        status = "PASS" if res.passed else "FAIL"
        print(f"\n[{status}] {res.name}: {res.detail}")
    assert res.passed, f"{res.name}: {res.detail}"
