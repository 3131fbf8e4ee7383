"""The four list schedulers and their pinned tie-breaking.

Fixed expected schedules were derived by hand-running each policy's
loop; the adversarial-family cases double as regression anchors for the
ratio experiments.
"""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from detsched import (
    Objective,
    SchedulerChoice,
    best_of_two,
    brute_force,
    canonical_starts,
    earliest_release_order,
    ectf,
    evaluate,
    is_interfering,
    non_idling,
    non_interfering,
    solve,
)

from conftest import instances, make_instance, small_rationals

F = Fraction

ALL = [non_idling, non_interfering, best_of_two, ectf]


class TestNonIdling:
    def test_two_job_example(self, two_job_instance):
        sched = non_idling(two_job_instance)
        assert sched.order == (1, 2)
        assert sched.starts == (F(0), F(5))
        assert evaluate(two_job_instance, sched).makespan == F(11)

    def test_big_job_blocks(self):
        # one alpha=8 job at release 0, two zero jobs at release 1: the big
        # job is the only pending job at t=0, so it runs first and the zeros
        # ride the doubling: 8 -> 16 -> 32
        inst = make_instance(1, [(1, 8, 0), (2, 0, 1), (3, 0, 1)])
        sched = non_idling(inst)
        assert sched.order == (1, 2, 3)
        assert evaluate(inst, sched).makespan == F(32)

    def test_single_release_is_spt(self):
        inst = make_instance(1, [(1, 3, 0), (2, 1, 0), (3, 2, 0)])
        assert non_idling(inst).order == (2, 3, 1)

    def test_tie_break_alpha_then_release_then_id(self):
        inst = make_instance(1, [(3, 1, 0), (2, 1, 0), (1, 2, 0)])
        assert non_idling(inst).order == (2, 3, 1)

    @settings(max_examples=150)
    @given(inst=instances())
    def test_never_idles_while_pending(self, inst):
        sched = non_idling(inst)
        report = evaluate(inst, sched)
        jobs = inst.job_map()
        for k, jid in enumerate(sched.order):
            if report.gaps[k] > 0:
                remaining = sched.order[k:]
                earliest = min(jobs[j].release for j in remaining)
                # the machine reopened exactly at the next release
                assert sched.starts[k] == earliest == jobs[jid].release

    def test_canonical_starts_match(self, two_job_instance):
        sched = non_idling(two_job_instance)
        assert sched == canonical_starts(two_job_instance, sched.order)


class TestIsInterfering:
    def test_short_future_job_blocks(self, two_job_instance):
        # candidate alpha=5 at t=0; job 2 has alpha=1 < 5 and 0 < 2 < 5
        assert is_interfering(two_job_instance, 1, F(0)) == F(2)

    def test_equal_alpha_does_not_block(self):
        inst = make_instance(1, [(1, 5, 0), (2, 5, 2)])
        assert is_interfering(inst, 1, F(0)) is None

    def test_boundary_release_does_not_block(self):
        # r = (1+beta)t + alpha exactly: the strict inequality excludes it
        inst = make_instance(1, [(1, 5, 0), (2, 1, 5)])
        assert is_interfering(inst, 1, F(0)) is None

    def test_release_at_t_does_not_block(self):
        inst = make_instance(1, [(1, 5, 0), (2, 1, 0)])
        assert is_interfering(inst, 1, F(0)) is None

    def test_minimal_blocking_release_wins(self):
        inst = make_instance(1, [(1, 9, 0), (2, 1, 4), (3, 2, 2)])
        assert is_interfering(inst, 1, F(0)) == F(2)


class TestNonInterfering:
    def test_two_job_example(self, two_job_instance):
        # idle [0,2) to let the short job go first
        sched = non_interfering(two_job_instance)
        assert sched.order == (2, 1)
        assert sched.starts == (F(2), F(5))
        assert evaluate(two_job_instance, sched).makespan == F(15)

    def test_adversarial_pair(self):
        # alpha (11, 10), releases (10, 30): waiting for the shorter job
        # costs a full doubling: C = 10+2*30 = 70, then 11+2*70 = 151
        inst = make_instance(1, [(1, 11, 10), (2, 10, 30)])
        sched = non_interfering(inst)
        assert sched.order == (2, 1)
        assert evaluate(inst, sched).makespan == F(151)

    def test_single_release_matches_non_idling(self):
        inst = make_instance(1, [(1, 3, 0), (2, 1, 0), (3, 2, 0)])
        assert non_interfering(inst) == non_idling(inst)

    @settings(max_examples=150)
    @given(inst=instances())
    def test_chosen_job_never_interfered(self, inst):
        sched = non_interfering(inst)
        for jid, start in zip(sched.order, sched.starts):
            assert is_interfering(inst, jid, start) is None


class TestEctf:
    def test_estimate_tie_goes_to_smaller_alpha(self):
        # long (alpha=2, r=0) and short (alpha=0, r=1) both estimate 2 at
        # t=0; the short job wins the tie and the machine idles [0,1)
        inst = make_instance(1, [(1, 2, 0), (2, 0, 1)])
        sched = ectf(inst)
        assert sched.order == (2, 1)
        assert evaluate(inst, sched).makespan == F(6)

    def test_two_job_example(self, two_job_instance):
        # estimates tie at 5; job 2 has the smaller fixed part
        sched = ectf(two_job_instance)
        assert sched.order == (2, 1)
        assert evaluate(two_job_instance, sched).makespan == F(15)

    def test_single_release_is_spt(self):
        inst = make_instance(1, [(1, 3, 0), (2, 1, 0), (3, 2, 0)])
        assert ectf(inst).order == (2, 3, 1)

    @settings(max_examples=100, deadline=None)
    @given(inst=instances(max_n=5, beta_strategy=st.sampled_from([F(1, 2), F(1), F(2)])))
    def test_within_three_plus_inverse_beta(self, inst):
        value = evaluate(inst, ectf(inst)).makespan
        optimum = brute_force(inst, Objective.MAKESPAN).best_value
        assert value <= (3 + F(1) / inst.beta) * optimum


class TestBestOfTwo:
    def test_picks_non_idling(self):
        # non-idling: 3 then 1+2*3=7; non-interfering idles to 2: 5, 3+2*5=13
        inst = make_instance(1, [(1, 3, 0), (2, 1, 2)])
        sched = best_of_two(inst)
        assert sched == non_idling(inst)
        assert evaluate(inst, sched).makespan == F(7)

    def test_picks_non_interfering(self):
        # the alpha=8 job first costs 32; idling to run the zeros costs 16
        inst = make_instance(1, [(1, 8, 0), (2, 0, 1), (3, 0, 1)])
        sched = best_of_two(inst)
        assert sched == non_interfering(inst)
        assert evaluate(inst, sched).makespan == F(16)

    def test_tie_returns_non_idling(self):
        inst = make_instance(1, [(1, 1, 0), (2, 2, 0)])
        assert best_of_two(inst) == non_idling(inst) == non_interfering(inst)

    @settings(max_examples=150)
    @given(inst=instances())
    def test_never_worse_than_either(self, inst):
        t = evaluate(inst, best_of_two(inst)).makespan
        assert t <= evaluate(inst, non_idling(inst)).makespan
        assert t <= evaluate(inst, non_interfering(inst)).makespan

    @settings(max_examples=100, deadline=None)
    @given(
        data=st.data(),
        beta=st.sampled_from([F(1, 2), F(1), F(2)]),
        n=st.integers(2, 5),
        high=st.integers(1, 9),
    )
    def test_two_release_ratio_at_most_two(self, data, beta, n, high):
        jobs = []
        late = data.draw(
            st.lists(st.booleans(), min_size=n, max_size=n).filter(
                lambda bits: any(bits) and not all(bits)
            )
        )
        for i in range(n):
            alpha = data.draw(st.integers(0, 9))
            jobs.append((i + 1, alpha, high if late[i] else 0))
        inst = make_instance(beta, jobs)
        value = evaluate(inst, best_of_two(inst)).makespan
        optimum = brute_force(inst, Objective.MAKESPAN).best_value
        assert value <= 2 * optimum


class TestEarliestReleaseOrder:
    def test_sorts_by_release_then_id(self):
        inst = make_instance(1, [(1, 1, 5), (2, 2, 0), (3, 3, 5)])
        assert earliest_release_order(inst).order == (2, 1, 3)


class TestSolveDispatch:
    def test_every_choice_dispatches(self, two_job_instance):
        expected = {
            SchedulerChoice.NON_IDLING: non_idling,
            SchedulerChoice.NON_INTERFERING: non_interfering,
            SchedulerChoice.BEST_OF_TWO: best_of_two,
            SchedulerChoice.ECTF: ectf,
        }
        assert set(expected) == set(SchedulerChoice)
        for choice, fn in expected.items():
            assert solve(two_job_instance, choice) == fn(two_job_instance)


class TestSchedulerContracts:
    @settings(max_examples=150)
    @given(inst=instances())
    def test_all_feasible_and_canonical(self, inst):
        for scheduler in ALL:
            sched = scheduler(inst)
            evaluate(inst, sched)  # raises if infeasible
            assert sched == canonical_starts(inst, sched.order)

    @settings(max_examples=100)
    @given(inst=instances())
    def test_deterministic(self, inst):
        for scheduler in ALL:
            assert scheduler(inst) == scheduler(inst)

    @settings(max_examples=100, deadline=None)
    @given(
        data=st.data(),
        beta=st.sampled_from([F(1, 2), F(1), F(2)]),
        n=st.integers(1, 5),
    )
    def test_single_release_all_spt_and_optimal(self, data, beta, n):
        jobs = [(i + 1, data.draw(st.integers(0, 9)), 0) for i in range(n)]
        inst = make_instance(beta, jobs)
        optimum = brute_force(inst, Objective.MAKESPAN).best_value
        spt = non_idling(inst).order
        for scheduler in (non_idling, non_interfering, ectf):
            sched = scheduler(inst)
            assert sched.order == spt
            assert evaluate(inst, sched).makespan == optimum
