"""The acceptance gate: every shipped criterion at full trial counts, one line each."""

import pytest

from liep import acceptance

CRITERIA = [
    (1, "coxeter-three-routes"),
    (2, "root-counts-and-top-height"),
    (3, "minimal-heights"),
    (4, "window-basis-vs-oracle"),
    (5, "boundary-sharpness"),
    (6, "exponential-calculus-laws"),
    (7, "bch-coefficients"),
    (8, "p-nilpotency-sharpness"),
    (9, "scalar-shift-lift"),
    (10, "heisenberg-spanning"),
    (11, "composite-gl-heights"),
]


@pytest.fixture(scope="module")
def results():
    by_number = {r.number: r for r in acceptance.run_all()}
    assert sorted(by_number) == [n for n, _ in CRITERIA]
    return by_number


@pytest.mark.parametrize("number,name", CRITERIA, ids=[f"{n:02d}-{name}" for n, name in CRITERIA])
def test_criterion(results, number, name):
    r = results[number]
    status = "PASS" if r.passed else "FAIL"
    print(f"{status} criterion {r.number}: {r.name} ({r.details})")
    assert r.name == name
    assert r.passed, f"criterion {number} ({name}): {r.details}"
    if r.budget_s is not None:
        assert r.elapsed_s < r.budget_s, f"criterion {number} over budget: {r.elapsed_s:.1f}s"
