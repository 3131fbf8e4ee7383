"""Exact optima for small instances, plus closed-form lower bounds."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .model import (
    Instance,
    Schedule,
    SchedulingError,
    ZERO,
    canonical_starts,
    evaluate,
    rational,
    validate_instance,
)


class Objective(Enum):
    MAKESPAN = "makespan"
    TOTAL_COMPLETION = "total-completion"


class InstanceTooLarge(SchedulingError):
    """Refusing to enumerate permutations past the configured cap."""


class DegenerateOptimum(SchedulingError):
    """The optimum is zero but the evaluated schedule's value is not."""


DEFAULT_BRUTEFORCE_CAP = 10


@dataclass(frozen=True)
class OptResult:
    objective: Objective
    best_schedule: Schedule
    best_value: Fraction
    permutations_examined: int


def objective_value(instance: Instance, schedule: Schedule, objective: Objective) -> Fraction:
    report = evaluate(instance, schedule)
    if objective is Objective.MAKESPAN:
        return report.makespan
    return report.total_completion


def brute_force(
    instance: Instance,
    objective: Objective,
    max_n: int = DEFAULT_BRUTEFORCE_CAP,
) -> OptResult:
    """Enumerate all n! orders with canonical starts and keep the best.

    Ties go to the lexicographically smallest order (by job id), which the
    enumeration order makes automatic.  Raises :class:`InstanceTooLarge`
    when ``instance.n > max_n``.
    """
    validate_instance(instance)
    if instance.n > max_n:
        raise InstanceTooLarge(
            f"n={instance.n} exceeds the brute-force cap of {max_n}"
        )
    jobs = instance.job_map()
    ids = sorted(jobs)
    g = instance.growth
    want_total = objective is Objective.TOTAL_COMPLETION
    best_perm: tuple[int, ...] | None = None
    best_value: Fraction | None = None
    examined = 0
    for perm in itertools.permutations(ids):
        examined += 1
        completion = ZERO
        total = ZERO
        for jid in perm:
            job = jobs[jid]
            s = job.release if job.release > completion else completion
            completion = job.alpha + g * s
            if want_total:
                total += completion
            elif best_value is not None and completion >= best_value:
                break  # completions only grow; this order cannot improve
        else:
            value = total if want_total else completion
            if best_value is None or value < best_value:
                best_value = value
                best_perm = perm
    assert best_perm is not None and best_value is not None
    return OptResult(
        objective=objective,
        best_schedule=canonical_starts(instance, best_perm),
        best_value=best_value,
        permutations_examined=examined,
    )


def dp_min_makespan(instance: Instance) -> Fraction:
    """Optimal makespan by dynamic programming over job subsets.

    The earliest time a subset can be fully completed is
    ``min over last jobs j of alpha_j + (1 + beta) * max(release_j,
    earliest completion of the rest)``; completions are monotone in starts,
    so finishing each prefix as early as possible is optimal.  O(n * 2^n)
    versus n! for :func:`brute_force`; used for bulk checks, cross-validated
    against the enumerator in the tests.
    """
    validate_instance(instance)
    jobs = instance.jobs
    n = len(jobs)
    g = instance.growth
    alphas = [j.alpha for j in jobs]
    releases = [j.release for j in jobs]
    best: list[Fraction | None] = [None] * (1 << n)
    best[0] = ZERO
    for mask in range(1, 1 << n):
        value: Fraction | None = None
        rest = mask
        while rest:
            low = rest & (-rest)
            rest ^= low
            i = low.bit_length() - 1
            prev = best[mask ^ low]
            s = releases[i] if releases[i] > prev else prev
            candidate = alphas[i] + g * s
            if value is None or candidate < value:
                value = candidate
        best[mask] = value
    result = best[(1 << n) - 1]
    assert result is not None
    return result


def lb_release(instance: Instance) -> Fraction:
    """Release-time lower bound on the optimal makespan.

    With releases sorted ascending as r_(1) <= ... <= r_(n), the optimum is
    at least ``sum beta**(n-i) * r_(i)``: every job started at or after its
    release inflates everything scheduled behind it.
    """
    validate_instance(instance)
    releases = sorted(j.release for j in instance.jobs)
    n = len(releases)
    return sum(
        (instance.beta ** (n - i) * r for i, r in enumerate(releases, start=1)),
        ZERO,
    )


def sorted_subset_cost(
    beta: int | Fraction, alphas: Sequence[int | Fraction], t: int | Fraction
) -> Fraction:
    """Cheapest completion of a job set started no earlier than ``t``,
    ignoring releases: run the fixed parts in ascending order back to back.

    Equals ``(1 + beta)**k * t + sum (1 + beta)**(k-i) * alpha_(i)`` with the
    alphas sorted ascending.  Returns ``t`` for an empty set.
    """
    beta = rational(beta)
    if beta <= 0:
        raise ValueError(f"beta must be > 0, got {beta}")
    t = rational(t)
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    g = 1 + beta
    completion = t
    for alpha in sorted(rational(a) for a in alphas):
        if alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {alpha}")
        completion = alpha + g * completion
    return completion


def lb_combined(instance: Instance) -> Fraction:
    """Max of the release-time bound and the sorted fixed-part bound."""
    validate_instance(instance)
    fixed = sorted_subset_cost(instance.beta, [j.alpha for j in instance.jobs], 0)
    release = lb_release(instance)
    return fixed if fixed > release else release


def value_ratio(value: Fraction, optimum: Fraction) -> Fraction:
    """value / optimum with the degenerate cases pinned: 0/0 is ratio 1,
    a zero optimum against a nonzero value raises
    :class:`DegenerateOptimum`."""
    if optimum == 0:
        if value == 0:
            return Fraction(1)
        raise DegenerateOptimum(f"optimum is 0 but the value is {value}")
    return value / optimum


def approximation_ratio(
    instance: Instance,
    schedule: Schedule,
    objective: Objective,
    max_n: int = DEFAULT_BRUTEFORCE_CAP,
) -> Fraction:
    """Ratio of the schedule's objective value to the brute-force optimum."""
    value = objective_value(instance, schedule, objective)
    optimum = brute_force(instance, objective, max_n=max_n).best_value
    return value_ratio(value, optimum)
