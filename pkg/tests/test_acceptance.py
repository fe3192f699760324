"""Reproduction criteria, one test per criterion.

Each test prints its sub-check lines; the full table is repeated in the
terminal summary.  Tolerances live in :mod:`squidtransfer.acceptance`.
"""
import pytest

from squidtransfer import acceptance

RESULTS = []


@pytest.fixture(scope="module")
def cache():
    return acceptance._Cache(acceptance.DEFAULT_EPSILON_TAIL)


@pytest.mark.parametrize("criterion", acceptance.CRITERIA, ids=lambda fn: fn.__name__)
def test_criterion(cache, criterion):
    checks = criterion(cache)
    RESULTS.extend(checks)
    for c in checks:
        print(c.line())
    failed = [c.line() for c in checks if not c.passed]
    assert not failed, "\n".join(failed)
