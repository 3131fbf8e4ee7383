"""Ratio experiments over generated instance families, and the
cross-objective inequality checks.

The harness generates one instance per trial (cycling through the size
range and the β set), runs each requested algorithm, and compares
against the exact optimum whenever the instance is small enough to
brute-force.  Everything that feeds a comparison stays an exact
rational; the CSV carries exact "p/q" strings next to a display-only
decimal rendering.

Determinism contract: a fixed config produces byte-identical CSV.  Wall
times are only measured under ``timings=True``, which deliberately
breaks that contract for the one column that cannot be deterministic.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, fields
from fractions import Fraction

from .generators import Family, FamilySpec, generate
from .model import Instance, ZERO, evaluate, rational, total_completion
from .oracle import (
    DEFAULT_BRUTEFORCE_CAP,
    Objective,
    OptResult,
    brute_force,
    dp_min_makespan,
    lb_release,
    objective_value,
    sorted_subset_cost,
    value_ratio,
)
from .schedulers import SchedulerChoice, ectf, solve
from .serialization import decimal_string, format_rational


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a run needs; two equal configs give identical output."""

    family: Family
    trials: int
    n_min: int
    n_max: int
    betas: tuple[Fraction, ...]
    seed: int
    algorithms: tuple[SchedulerChoice, ...]
    objective: Objective = Objective.MAKESPAN
    alpha_max: int = 8
    r_max: int = 12
    b: Fraction | None = None
    max_bruteforce_n: int = DEFAULT_BRUTEFORCE_CAP
    timings: bool = False

    def __post_init__(self) -> None:
        if self.trials < 0:
            raise ValueError("trials must be >= 0")
        if self.n_min < 1 or self.n_max < self.n_min:
            raise ValueError("need 1 <= n_min <= n_max")
        if not self.betas:
            raise ValueError("betas must be nonempty")
        if not self.algorithms:
            raise ValueError("algorithms must be nonempty")
        object.__setattr__(self, "betas", tuple(rational(b) for b in self.betas))
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        if self.b is not None:
            object.__setattr__(self, "b", rational(self.b))


@dataclass(frozen=True)
class ExperimentRow:
    """One (instance, algorithm) measurement.

    ``opt_value`` and ``ratio`` are None when the instance exceeded the
    oracle cap.  ``wall_time_ms`` is already a string: empty unless the
    run opted into timings.
    """

    instance_id: str
    n: int
    beta: Fraction
    family: str
    seed: int
    algorithm: str
    objective: str
    value: Fraction
    opt_value: Fraction | None
    ratio: Fraction | None
    lb_release: Fraction
    lb_fixed: Fraction
    wall_time_ms: str


# Header is the row's field order, with the exact ratio and its decimal
# rendering as adjacent columns.
CSV_HEADER = (
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

assert CSV_HEADER[:10] + CSV_HEADER[11:] == tuple(
    f.name for f in fields(ExperimentRow)
)


def _csv_cells(row: ExperimentRow) -> list[str]:
    return [
        row.instance_id,
        str(row.n),
        decimal_string(row.beta),
        row.family,
        str(row.seed),
        row.algorithm,
        row.objective,
        format_rational(row.value),
        "" if row.opt_value is None else format_rational(row.opt_value),
        "" if row.ratio is None else format_rational(row.ratio),
        "" if row.ratio is None else decimal_string(row.ratio),
        format_rational(row.lb_release),
        format_rational(row.lb_fixed),
        row.wall_time_ms,
    ]


def _optimum(instance: Instance, objective: Objective, cap: int) -> Fraction | None:
    if instance.n > cap:
        return None
    if objective is Objective.MAKESPAN:
        # subset DP: same answer as brute force, exponentially cheaper
        return dp_min_makespan(instance)
    return brute_force(instance, objective, max_n=cap).best_value


def run_experiment(config: ExperimentConfig) -> list[ExperimentRow]:
    """Run the configured sweep; rows come back sorted by
    (instance_id, algorithm) regardless of execution order."""
    span = config.n_max - config.n_min + 1
    rows: list[ExperimentRow] = []
    for trial in range(config.trials):
        spec = FamilySpec(
            family=config.family,
            n=config.n_min + trial % span,
            beta=config.betas[trial % len(config.betas)],
            b=config.b,
            seed=config.seed + trial,
            alpha_max=config.alpha_max,
            r_max=config.r_max,
        )
        instance = generate(spec)
        instance_id = f"{config.family.value}-t{trial:05d}"
        lbr = lb_release(instance)
        lbf = sorted_subset_cost(
            instance.beta, [job.alpha for job in instance.jobs], ZERO
        )
        opt = _optimum(instance, config.objective, config.max_bruteforce_n)
        for algorithm in config.algorithms:
            started = time.perf_counter() if config.timings else 0.0
            schedule = solve(instance, algorithm)
            value = objective_value(instance, schedule, config.objective)
            elapsed = (
                f"{(time.perf_counter() - started) * 1000.0:.3f}"
                if config.timings
                else ""
            )
            ratio = None if opt is None else value_ratio(value, opt)
            rows.append(
                ExperimentRow(
                    instance_id=instance_id,
                    n=instance.n,
                    beta=instance.beta,
                    family=config.family.value,
                    seed=spec.seed,
                    algorithm=algorithm.value,
                    objective=config.objective.value,
                    value=value,
                    opt_value=opt,
                    ratio=ratio,
                    lb_release=lbr,
                    lb_fixed=lbf,
                    wall_time_ms=elapsed,
                )
            )
    rows.sort(key=lambda r: (r.instance_id, r.algorithm))
    return rows


def write_csv(rows: list[ExperimentRow]) -> str:
    """CSV text: fixed header, LF line endings, deterministic."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(_csv_cells(row))
    return buffer.getvalue()


@dataclass(frozen=True)
class InequalityCheck:
    label: str
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


@dataclass(frozen=True)
class CrossObjectiveReport:
    makespan_opt: OptResult
    total_completion_opt: OptResult
    checks: tuple[InequalityCheck, ...]

    @property
    def all_hold(self) -> bool:
        return all(check.holds for check in self.checks)


def cross_objective_check(
    instance: Instance, max_n: int = DEFAULT_BRUTEFORCE_CAP
) -> CrossObjectiveReport:
    """How well each objective's optimum serves the other objective.

    Three inequalities, each with exact sides:
      a. the total-completion optimum's makespan is at most twice the
         optimal makespan;
      b. the makespan optimum's total completion is at most (1 + 1/β)
         times the optimal total completion;
      c. the estimate-first heuristic's total completion is at most
         (1 + 1/β)(3 + 1/β) times the optimal total completion.
    """
    t_opt = brute_force(instance, Objective.MAKESPAN, max_n=max_n)
    c_opt = brute_force(instance, Objective.TOTAL_COMPLETION, max_n=max_n)
    inv_beta = Fraction(1) / instance.beta

    sum_opt_makespan = evaluate(instance, c_opt.best_schedule).makespan
    makespan_opt_sum = total_completion(instance, t_opt.best_schedule)
    ectf_sum = total_completion(instance, ectf(instance))

    checks = (
        InequalityCheck(
            "sum-optimum-makespan", sum_opt_makespan, 2 * t_opt.best_value
        ),
        InequalityCheck(
            "makespan-optimum-sum",
            makespan_opt_sum,
            (1 + inv_beta) * c_opt.best_value,
        ),
        InequalityCheck(
            "ectf-sum",
            ectf_sum,
            (1 + inv_beta) * (3 + inv_beta) * c_opt.best_value,
        ),
    )
    return CrossObjectiveReport(t_opt, c_opt, checks)
