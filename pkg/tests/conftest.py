"""Shared strategies and helpers.

Instances built here always carry exact rationals; strategies lean on
small denominators so brute-force comparisons stay fast.
"""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from detsched import Instance, Job, validate_instance


def make_instance(beta, jobs) -> Instance:
    """jobs: iterable of (id, alpha, release) with ints or Fractions."""
    return validate_instance(
        Instance(
            Fraction(beta),
            tuple(Job(i, Fraction(a), Fraction(r)) for i, a, r in jobs),
        )
    )


# small nonnegative rationals with denominators in {1, 2, 3, 4}
small_rationals = st.builds(
    Fraction,
    st.integers(min_value=0, max_value=24),
    st.sampled_from([1, 2, 3, 4]),
)

betas = st.sampled_from(
    [Fraction(1, 10), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5)]
)


@st.composite
def instances(draw, min_n=1, max_n=6, beta_strategy=betas):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    beta = draw(beta_strategy)
    jobs = tuple(
        Job(i, draw(small_rationals), draw(small_rationals))
        for i in range(1, n + 1)
    )
    return validate_instance(Instance(beta, jobs))


@pytest.fixture
def two_job_instance() -> Instance:
    """The running example: beta=1, j1 (alpha 5, release 0), j2 (alpha 1, release 2)."""
    return make_instance(1, [(1, 5, 0), (2, 1, 2)])


# The acceptance tests record one verdict line apiece; replay them after the
# run so they survive pytest's stdout capture.

def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture(scope="session")
def verdict(pytestconfig):
    def emit(criterion: str, passed: bool, detail: str) -> str:
        line = f"[acceptance] {criterion} {'PASS' if passed else 'FAIL'}: {detail}"
        pytestconfig._acceptance_lines.append(line)
        print(line)
        return line

    return emit


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance verdicts")
        for line in lines:
            terminalreporter.write_line(line)
