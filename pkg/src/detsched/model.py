"""Domain model: single-machine jobs whose processing times grow with start time.

A job with fixed part ``alpha`` started at time ``s`` occupies the machine for
``alpha + beta * s`` time units, so it completes at ``alpha + (1 + beta) * s``.
The deterioration rate ``beta > 0`` is shared by every job of an instance;
each job carries its own fixed part and release time.

All quantities are exact rationals (``fractions.Fraction``).  Terms like
``(1 + beta) ** n`` must compare exactly for the oracle and the bound checks
to mean anything, so floats are kept out of every computation in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class SchedulingError(Exception):
    """Base class for all errors raised by this package."""


class BetaNonPositive(SchedulingError):
    """The deterioration rate must be strictly positive."""


class NegativeParameter(SchedulingError):
    """A fixed part, release time, or job id is out of range."""


class DuplicateId(SchedulingError):
    """Two jobs share an id."""


class EmptyInstance(SchedulingError):
    """An instance must contain at least one job."""


class NotAPermutation(SchedulingError):
    """A schedule order must list every job id of the instance exactly once."""


class InfeasibleSchedule(SchedulingError):
    """A start time violates a release time or overlaps the predecessor."""


class UnknownJobId(SchedulingError):
    """A job id does not occur in the instance."""


ZERO = Fraction(0)


def rational(value: int | Fraction) -> Fraction:
    """Coerce ``value`` to an exact rational.  Floats are rejected outright."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scheduling quantities")
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an int or Fraction, got {type(value).__name__}")


@dataclass(frozen=True)
class Job:
    """One job: opaque positive integer id, fixed part, release time."""

    id: int
    alpha: Fraction
    release: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", rational(self.alpha))
        object.__setattr__(self, "release", rational(self.release))


@dataclass(frozen=True)
class Instance:
    """A deterioration rate and the jobs subject to it."""

    beta: Fraction
    jobs: tuple[Job, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "beta", rational(self.beta))
        object.__setattr__(self, "jobs", tuple(self.jobs))

    @property
    def n(self) -> int:
        return len(self.jobs)

    @property
    def growth(self) -> Fraction:
        """The completion multiplier ``1 + beta``."""
        return 1 + self.beta

    def job(self, job_id: int) -> Job:
        for job in self.jobs:
            if job.id == job_id:
                return job
        raise UnknownJobId(f"no job with id {job_id}")

    def job_map(self) -> dict[int, Job]:
        return {job.id: job for job in self.jobs}


@dataclass(frozen=True)
class Schedule:
    """An execution order (job ids by position) with explicit start times."""

    order: tuple[int, ...]
    starts: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "starts", tuple(rational(s) for s in self.starts))
        if len(self.order) != len(self.starts):
            raise ValueError("order and starts must have equal length")


@dataclass(frozen=True)
class EvalReport:
    """Per-position timings plus both objective values."""

    starts: tuple[Fraction, ...]
    completions: tuple[Fraction, ...]
    gaps: tuple[Fraction, ...]
    makespan: Fraction
    total_completion: Fraction


def validate_instance(instance: Instance) -> Instance:
    """Check every instance invariant; return the instance unchanged.

    Raises :class:`EmptyInstance`, :class:`BetaNonPositive`,
    :class:`NegativeParameter`, or :class:`DuplicateId`.
    """
    if not instance.jobs:
        raise EmptyInstance("instance has no jobs")
    if instance.beta <= 0:
        raise BetaNonPositive(f"beta must be > 0, got {instance.beta}")
    seen: set[int] = set()
    for job in instance.jobs:
        if job.id < 1:
            raise NegativeParameter(f"job id must be a positive integer, got {job.id}")
        if job.alpha < 0:
            raise NegativeParameter(f"job {job.id}: alpha must be >= 0, got {job.alpha}")
        if job.release < 0:
            raise NegativeParameter(f"job {job.id}: release must be >= 0, got {job.release}")
        if job.id in seen:
            raise DuplicateId(f"job id {job.id} occurs more than once")
        seen.add(job.id)
    return instance


def _check_permutation(instance: Instance, order: Sequence[int]) -> None:
    if sorted(order) != sorted(job.id for job in instance.jobs):
        raise NotAPermutation("order must list every job id of the instance exactly once")


def canonical_starts(instance: Instance, order: Sequence[int]) -> Schedule:
    """Earliest-start schedule for ``order``: each job begins at
    ``max(release, predecessor completion)``.

    Completions are monotone in starts, so among all feasible start
    assignments with this order the canonical one minimizes both the
    makespan and the total completion time.
    """
    _check_permutation(instance, order)
    jobs = instance.job_map()
    g = instance.growth
    starts: list[Fraction] = []
    completion = ZERO
    for jid in order:
        job = jobs[jid]
        s = job.release if job.release > completion else completion
        starts.append(s)
        completion = job.alpha + g * s
    return Schedule(tuple(order), tuple(starts))


def evaluate(instance: Instance, schedule: Schedule) -> EvalReport:
    """Simulate ``schedule`` forward; report starts, completions, gaps, and
    both objective values.

    A gap is the idle interval before a position: ``starts[k] - completion
    of position k-1`` (the first position's gap is its start time).  Raises
    :class:`InfeasibleSchedule` when a start precedes a release or its
    predecessor's completion.
    """
    _check_permutation(instance, schedule.order)
    jobs = instance.job_map()
    g = instance.growth
    completions: list[Fraction] = []
    gaps: list[Fraction] = []
    total = ZERO
    completion = ZERO
    for jid, s in zip(schedule.order, schedule.starts):
        job = jobs[jid]
        if s < job.release:
            raise InfeasibleSchedule(
                f"job {jid} starts at {s}, before its release {job.release}"
            )
        gap = s - completion
        if gap < 0:
            raise InfeasibleSchedule(
                f"job {jid} starts at {s}, before its predecessor completes at {completion}"
            )
        completion = job.alpha + g * s
        gaps.append(gap)
        completions.append(completion)
        total += completion
    return EvalReport(
        starts=schedule.starts,
        completions=tuple(completions),
        gaps=tuple(gaps),
        makespan=completion,
        total_completion=total,
    )


def makespan_closed_form(instance: Instance, schedule: Schedule) -> Fraction:
    """Makespan as a weighted sum of gaps and fixed parts.

    With ``g = 1 + beta`` and 1-based positions ``i`` of ``n``, returns
    ``sum g**(n-i+1) * q_i  +  sum g**(n-i) * alpha_i`` where ``q_i`` is the
    gap ahead of position ``i``.  This avoids the forward recurrence that
    :func:`evaluate` uses and must agree with it exactly on every feasible
    schedule.
    """
    _check_permutation(instance, schedule.order)
    jobs = instance.job_map()
    g = instance.growth
    n = len(schedule.order)
    total = ZERO
    prev_completion = ZERO
    for i, (jid, s) in enumerate(zip(schedule.order, schedule.starts), start=1):
        job = jobs[jid]
        if s < job.release:
            raise InfeasibleSchedule(
                f"job {jid} starts at {s}, before its release {job.release}"
            )
        gap = s - prev_completion
        if gap < 0:
            raise InfeasibleSchedule(
                f"job {jid} starts at {s}, before its predecessor completes at {prev_completion}"
            )
        total += g ** (n - i + 1) * gap + g ** (n - i) * job.alpha
        prev_completion = job.alpha + g * s
    return total


def fixed_cost_identity(instance: Instance, schedule: Schedule) -> tuple[Fraction, Fraction]:
    """Both sides of the fixed-part cost identity for the schedule's order.

    lhs: ``sum g**(n-i) * alpha_i``.
    rhs: ``sum alpha_i`` plus, for each position ``k >= 2``,
    ``beta * g**(n-k)`` times the fixed parts ahead of ``k``.

    The two sides are equal for every order; returning both lets callers
    check the algebra rather than trust it.
    """
    evaluate(instance, schedule)  # feasibility gate
    jobs = instance.job_map()
    g = instance.growth
    alphas = [jobs[jid].alpha for jid in schedule.order]
    n = len(alphas)
    lhs = sum((g ** (n - i) * a for i, a in enumerate(alphas, start=1)), ZERO)
    rhs = sum(alphas, ZERO)
    prefix = ZERO
    for k in range(2, n + 1):
        prefix += alphas[k - 2]
        rhs += instance.beta * g ** (n - k) * prefix
    return lhs, rhs


def completion_estimate(instance: Instance, job_id: int, t: int | Fraction) -> Fraction:
    """Completion time of ``job_id`` if it is started next, no earlier than
    ``t``: ``(1 + beta) * max(t, release) + alpha``."""
    t = rational(t)
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    job = instance.job(job_id)
    s = t if t > job.release else job.release
    return instance.growth * s + job.alpha


def total_completion(instance: Instance, schedule: Schedule) -> Fraction:
    """Sum of completion times of ``schedule``."""
    return evaluate(instance, schedule).total_completion


def shift_releases(instance: Instance) -> Instance:
    """Translate all releases so the earliest becomes 0.

    Not an equivalence transform: the time origin matters under
    deterioration.  Offered for experiments that want the normalized form.
    """
    r_min = min(job.release for job in instance.jobs)
    jobs = tuple(Job(j.id, j.alpha, j.release - r_min) for j in instance.jobs)
    return Instance(instance.beta, jobs)
