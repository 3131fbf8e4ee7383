"""The four order-building policies, each a pure function of the instance.

Tie-breaking is pinned everywhere so repeated runs produce identical
schedules: the greedy policies prefer the smaller fixed part, then the
earlier release, then the smaller id; the completion-estimate policy
prefers the smaller estimate, then the smaller fixed part, then the
smaller id.  Ratio experiments on tie-heavy instances are sensitive to
these choices, so they are part of the contract, not a detail.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from .model import (
    Instance,
    Job,
    Schedule,
    ZERO,
    evaluate,
    canonical_starts,
    validate_instance,
)


class SchedulerChoice(Enum):
    NON_IDLING = "non-idling"
    NON_INTERFERING = "non-interfering"
    BEST_OF_TWO = "best-of-two"
    ECTF = "ectf"


def _greedy_key(job: Job) -> tuple[Fraction, Fraction, int]:
    return (job.alpha, job.release, job.id)


def non_idling(instance: Instance) -> Schedule:
    """Whenever the machine frees up, start the shortest pending job; never
    idle while something is pending.  If nothing is pending, advance to the
    next release."""
    validate_instance(instance)
    g = instance.growth
    remaining = list(instance.jobs)
    t = ZERO
    order: list[int] = []
    starts: list[Fraction] = []
    while remaining:
        pending = [j for j in remaining if j.release <= t]
        if not pending:
            t = min(j.release for j in remaining)
            continue
        job = min(pending, key=_greedy_key)
        remaining.remove(job)
        order.append(job.id)
        starts.append(t)
        t = job.alpha + g * t
    return Schedule(tuple(order), tuple(starts))


def is_interfering(instance: Instance, candidate_id: int, t: int | Fraction) -> Fraction | None:
    """Would starting ``candidate_id`` at time ``t`` run over a shorter job's
    release?

    Returns the smallest release ``r`` with ``t < r < (1 + beta) * t +
    alpha_candidate`` among jobs with a strictly smaller fixed part, or
    ``None``.  Both inequalities are strict: a release exactly at ``t`` or
    exactly at the projected completion does not block.
    """
    candidate = instance.job(candidate_id)
    horizon = instance.growth * t + candidate.alpha
    blocking = [
        job.release
        for job in instance.jobs
        if job.id != candidate_id
        and job.alpha < candidate.alpha
        and t < job.release < horizon
    ]
    return min(blocking) if blocking else None


def non_interfering(instance: Instance) -> Schedule:
    """Like :func:`non_idling`, but refuse to start a job that would run over
    a shorter job's release; instead idle until that release and reconsider
    from scratch."""
    validate_instance(instance)
    g = instance.growth
    remaining = list(instance.jobs)
    t = ZERO
    order: list[int] = []
    starts: list[Fraction] = []
    while remaining:
        pending = [j for j in remaining if j.release <= t]
        if not pending:
            t = min(j.release for j in remaining)
            continue
        candidate = min(pending, key=_greedy_key)
        blocking = is_interfering(instance, candidate.id, t)
        if blocking is not None:
            # Jobs already started can never block: their releases are <= t.
            t = blocking
            continue
        remaining.remove(candidate)
        order.append(candidate.id)
        starts.append(t)
        t = candidate.alpha + g * t
    return Schedule(tuple(order), tuple(starts))


def ectf(instance: Instance) -> Schedule:
    """Estimated-completion-time-first: repeatedly start the uncompleted job
    whose completion estimate ``(1 + beta) * max(t, release) + alpha`` is
    smallest, idling up to its release if needed."""
    validate_instance(instance)
    g = instance.growth
    remaining = list(instance.jobs)
    t = ZERO
    order: list[int] = []
    starts: list[Fraction] = []
    while remaining:
        def estimate_key(job: Job) -> tuple[Fraction, Fraction, int]:
            s = t if t > job.release else job.release
            return (g * s + job.alpha, job.alpha, job.id)

        job = min(remaining, key=estimate_key)
        remaining.remove(job)
        s = t if t > job.release else job.release
        order.append(job.id)
        starts.append(s)
        t = job.alpha + g * s
    return Schedule(tuple(order), tuple(starts))


def best_of_two(instance: Instance) -> Schedule:
    """Run both :func:`non_idling` and :func:`non_interfering`; keep the one
    with the smaller makespan (the non-idling result on a tie)."""
    a = non_idling(instance)
    b = non_interfering(instance)
    if evaluate(instance, a).makespan <= evaluate(instance, b).makespan:
        return a
    return b


def earliest_release_order(instance: Instance) -> Schedule:
    """Reference heuristic: canonical schedule of the order sorted by
    (release, id).  Used as a feasible benchmark on instances too big or too
    contrived for the exact oracle."""
    validate_instance(instance)
    order = [j.id for j in sorted(instance.jobs, key=lambda j: (j.release, j.id))]
    return canonical_starts(instance, order)


SCHEDULERS = {
    SchedulerChoice.NON_IDLING: non_idling,
    SchedulerChoice.NON_INTERFERING: non_interfering,
    SchedulerChoice.BEST_OF_TWO: best_of_two,
    SchedulerChoice.ECTF: ectf,
}


def solve(instance: Instance, choice: SchedulerChoice) -> Schedule:
    """Dispatch to the scheduler named by ``choice``."""
    return SCHEDULERS[choice](instance)
