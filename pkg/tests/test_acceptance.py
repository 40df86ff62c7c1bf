"""End-to-end acceptance criteria, each with an explicit wall-clock budget.

Each test runs one criterion from the acceptance module and fails on either
an assertion inside the criterion or a blown time budget.
"""

import time

import pytest

from monoproj.acceptance import CRITERIA

# seconds allowed per criterion, keyed by criterion name
BUDGETS = {
    "newton-identifications": 60,
    "birkhoff-facets": 120,
    "main-lemma-suite": 600,
    "cut-scaling": 30,
    "universality-compiler": 300,
    "affine-gadget": 300,
    "converse-construction": 120,
    "semantic-crosschecks": 300,
    "xc-sanity": 120,
    "projection-search": 180,
}


def test_every_criterion_has_a_budget():
    assert {name for name, _ in CRITERIA} == set(BUDGETS)


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[n for n, _ in CRITERIA])
def test_criterion(name, fn):
    t0 = time.perf_counter()
    fn()
    elapsed = time.perf_counter() - t0
    assert elapsed < BUDGETS[name], (
        f"{name} passed but took {elapsed:.1f}s (budget {BUDGETS[name]}s)")
