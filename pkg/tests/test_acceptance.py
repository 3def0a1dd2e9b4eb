"""One test per acceptance criterion, each backed by the pinned checks."""

from functools import lru_cache

import pytest

from chances import reproduce

from conftest import ACCEPTANCE


@lru_cache(maxsize=None)
def _checks():
    return tuple(reproduce.run())


@pytest.mark.parametrize("criterion", sorted(reproduce.CRITERIA))
def test_criterion(criterion):
    topic, desc, _ = reproduce.CRITERIA[criterion]
    checks = [c for c in _checks() if c.criterion == criterion]
    assert checks, f"no checks for criterion {criterion}"
    failed = [c for c in checks if not c.passed]
    ACCEPTANCE[criterion] = (not failed, f"{topic}: {desc}")
    print(f"criterion {criterion:2d} {'PASS' if not failed else 'FAIL'}  {desc}")
    assert not failed, "\n".join(
        f"{c.name}: expected {c.expected}, computed {c.computed}, tol {c.tol}  {c.note}"
        for c in failed)
