"""The sweep harness, its CSV contract, and the cross-objective checks."""

from __future__ import annotations

import csv
import io
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from detsched import (
    CrossObjectiveReport,
    ExperimentConfig,
    Family,
    Objective,
    SchedulerChoice,
    cross_objective_check,
    run_experiment,
    write_csv,
)
from detsched.experiment import CSV_HEADER
from detsched.serialization import parse_rational

from conftest import instances, make_instance


def config(**overrides) -> ExperimentConfig:
    base = dict(
        family=Family.RANDOM,
        trials=6,
        n_min=2,
        n_max=4,
        betas=(F(1),),
        seed=7,
        algorithms=(SchedulerChoice.ECTF,),
    )
    base.update(overrides)
    return ExperimentConfig(**base)


def parse_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


class TestConfigValidation:
    def test_negative_trials(self):
        with pytest.raises(ValueError, match="trials"):
            config(trials=-1)

    def test_zero_n_min(self):
        with pytest.raises(ValueError, match="n_min"):
            config(n_min=0)

    def test_inverted_size_range(self):
        with pytest.raises(ValueError, match="n_min"):
            config(n_min=5, n_max=4)

    def test_empty_betas(self):
        with pytest.raises(ValueError, match="betas"):
            config(betas=())

    def test_empty_algorithms(self):
        with pytest.raises(ValueError, match="algorithms"):
            config(algorithms=())

    def test_betas_coerced_to_fractions(self):
        cfg = config(betas=(1, F(1, 2)))
        assert cfg.betas == (F(1), F(1, 2))


class TestRunExperiment:
    def test_estimate_first_adversarial_ratios(self):
        # k = 1, 2, 3 at beta=1, b=1: the heuristic's makespans are 6, 30,
        # 126 against true optima 4, 18, 70
        rows = run_experiment(
            config(
                family=Family.ECTF_ADV,
                trials=3,
                n_min=1,
                n_max=3,
                b=F(1),
            )
        )
        assert [row.ratio for row in rows] == [F(3, 2), F(5, 3), F(9, 5)]
        assert [row.value for row in rows] == [F(6), F(30), F(126)]
        assert [row.opt_value for row in rows] == [F(4), F(18), F(70)]
        assert [row.n for row in rows] == [2, 4, 6]

    def test_random_family_ratio_window(self):
        rows = run_experiment(config(trials=40, n_min=2, n_max=5, seed=3))
        assert len(rows) == 40
        for row in rows:
            assert row.ratio is not None
            # makespan guarantee for the estimate-first rule at beta=1
            assert 1 <= row.ratio <= 4
            assert row.lb_release <= row.opt_value
            assert row.lb_fixed <= row.opt_value

    def test_zero_trials_gives_header_only(self):
        rows = run_experiment(config(trials=0))
        assert rows == []
        assert write_csv(rows) == ",".join(CSV_HEADER) + "\n"

    def test_rows_sorted_by_instance_then_algorithm(self):
        rows = run_experiment(
            config(
                trials=4,
                algorithms=(
                    SchedulerChoice.NON_INTERFERING,
                    SchedulerChoice.NON_IDLING,
                ),
            )
        )
        keys = [(row.instance_id, row.algorithm) for row in rows]
        assert keys == sorted(keys)
        # both algorithms appear under every instance id
        per_instance = {row.instance_id for row in rows}
        assert len(rows) == 2 * len(per_instance)

    def test_oracle_cap_blanks_optimum(self):
        rows = run_experiment(
            config(trials=2, n_min=4, n_max=4, max_bruteforce_n=3)
        )
        for row in rows:
            assert row.opt_value is None and row.ratio is None

    def test_beta_cycling(self):
        rows = run_experiment(
            config(trials=4, n_min=3, n_max=3, betas=(F(1, 2), F(2)))
        )
        assert [row.beta for row in rows] == [F(1, 2), F(2), F(1, 2), F(2)]


class TestCsvContract:
    def test_reruns_are_byte_identical(self):
        cfg = config(trials=8)
        assert write_csv(run_experiment(cfg)) == write_csv(run_experiment(cfg))

    def test_timings_differ_only_in_wall_time(self):
        cfg = config(trials=4)
        timed = parse_csv(write_csv(run_experiment(config(trials=4, timings=True))))
        plain = parse_csv(write_csv(run_experiment(cfg)))
        for trow, prow in zip(timed, plain):
            assert trow["wall_time_ms"] != ""
            assert prow["wall_time_ms"] == ""
            trow["wall_time_ms"] = prow["wall_time_ms"] = ""
            assert trow == prow

    def test_cells_round_trip_exactly(self):
        rows = parse_csv(
            write_csv(run_experiment(config(trials=6, betas=(F(1, 2),))))
        )
        assert len(rows) == 6
        for row in rows:
            assert row["beta"] == "0.5"
            value = parse_rational(row["value"])
            opt = parse_rational(row["opt_value"])
            assert parse_rational(row["ratio"]) == value / opt
            assert "." not in row["value"]

    def test_ratio_decimal_is_display_only(self):
        rows = run_experiment(
            config(
                family=Family.ECTF_ADV, trials=1, n_min=2, n_max=2, b=F(1)
            )
        )
        cells = parse_csv(write_csv(rows))[0]
        assert cells["ratio"] == "5/3"
        assert cells["ratio_decimal"] == "1.666666667"

    def test_header_matches_contract(self):
        assert CSV_HEADER == (
            "instance_id",
            "n",
            "beta",
            "family",
            "seed",
            "algorithm",
            "objective",
            "value",
            "opt_value",
            "ratio",
            "ratio_decimal",
            "lb_release",
            "lb_fixed",
            "wall_time_ms",
        )


class TestCrossObjectiveCheck:
    def test_two_job_example(self, two_job_instance):
        report = cross_objective_check(two_job_instance)
        assert report.makespan_opt.best_value == F(11)
        assert report.total_completion_opt.best_value == F(16)
        by_label = {check.label: check for check in report.checks}
        assert by_label["sum-optimum-makespan"].lhs == F(11)
        assert by_label["sum-optimum-makespan"].rhs == F(22)
        assert by_label["makespan-optimum-sum"].lhs == F(16)
        assert by_label["makespan-optimum-sum"].rhs == F(32)
        assert by_label["ectf-sum"].lhs == F(20)
        assert by_label["ectf-sum"].rhs == F(128)
        assert report.all_hold

    def test_single_job_collapses(self):
        inst = make_instance(2, [(1, 4, 1)])
        report = cross_objective_check(inst)
        assert report.makespan_opt.best_value == F(7)
        assert report.total_completion_opt.best_value == F(7)
        assert report.all_hold

    @settings(max_examples=150, deadline=None)
    @given(inst=instances(min_n=1, max_n=5))
    def test_inequalities_hold_on_random_instances(self, inst):
        report = cross_objective_check(inst)
        assert report.all_hold, [
            (c.label, c.lhs, c.rhs) for c in report.checks if not c.holds
        ]
