"""Command-line surface.

Subcommands: gen, solve, opt, eval, experiment, verify-pm, cross-check.
Exit codes: 0 success, 1 validation or parse errors, 2 when a checked
bound fails to hold (a finding, not a usage error).

DETSCHED_SEED in the environment supplies the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .experiment import (
    ExperimentConfig,
    cross_objective_check,
    run_experiment,
    write_csv,
)
from .generators import Family, FamilySpec, generate
from .model import SchedulingError, evaluate
from .oracle import Objective, brute_force
from .pseudomatching import ConstructionFailed, construct_two_pm
from .schedulers import SchedulerChoice, non_interfering, solve
from .serialization import (
    decimal_string,
    format_rational,
    parse_instance,
    parse_rational,
    parse_schedule,
    write_instance,
    write_schedule,
)

FOUND_VIOLATION = 2


def _default_seed() -> int:
    raw = os.environ.get("DETSCHED_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise SchedulingError(f"DETSCHED_SEED must be an integer, got {raw!r}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchedulingError(f"cannot read {path}: {exc}") from None


def _json(doc: object) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _parse_betas(text: str) -> tuple[Fraction, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise SchedulingError("--betas needs at least one value")
    return tuple(parse_rational(p, "beta") for p in parts)


def _parse_algorithms(text: str) -> tuple[SchedulerChoice, ...]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise SchedulingError("--algorithms needs at least one name")
    try:
        return tuple(SchedulerChoice(p) for p in parts)
    except ValueError as exc:
        names = ", ".join(c.value for c in SchedulerChoice)
        raise SchedulingError(f"{exc}; choose from: {names}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="detsched",
        description="Solvers, exact oracles, and ratio experiments for "
        "single-machine scheduling with uniformly deteriorating jobs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    families = [f.value for f in Family]
    algorithms = [c.value for c in SchedulerChoice]
    objectives = [o.value for o in Objective]

    p_gen = sub.add_parser("gen", help="generate an instance from a family")
    p_gen.add_argument("--family", choices=families, default=Family.RANDOM.value)
    p_gen.add_argument(
        "--n", "--k", dest="n", type=int, default=5,
        help="size (job count, or the adversarial families' k parameter)",
    )
    p_gen.add_argument("--beta", default="1", help="rational, e.g. 1 or 3/2")
    p_gen.add_argument("--b", default=None, help="family scale parameter, rational")
    p_gen.add_argument("--seed", type=int, default=None)
    p_gen.add_argument("--alpha-max", type=int, default=8)
    p_gen.add_argument("--r-max", type=int, default=12)
    p_gen.add_argument("--out", default=None)

    p_solve = sub.add_parser("solve", help="run one approximation algorithm")
    p_solve.add_argument("--instance", required=True)
    p_solve.add_argument("--algorithm", choices=algorithms, required=True)
    p_solve.add_argument("--out", default=None)

    p_opt = sub.add_parser("opt", help="brute-force an exact optimum")
    p_opt.add_argument("--instance", required=True)
    p_opt.add_argument(
        "--objective", choices=objectives, default=Objective.MAKESPAN.value
    )
    p_opt.add_argument("--max-bruteforce-n", type=int, default=10)
    p_opt.add_argument("--out", default=None)

    p_eval = sub.add_parser("eval", help="evaluate a schedule against an instance")
    p_eval.add_argument("--instance", required=True)
    p_eval.add_argument("--schedule", required=True)
    p_eval.add_argument("--out", default=None)

    p_exp = sub.add_parser("experiment", help="run a ratio sweep, emit CSV")
    p_exp.add_argument("--family", choices=families, default=Family.RANDOM.value)
    p_exp.add_argument("--trials", type=int, default=100)
    p_exp.add_argument("--n-min", type=int, default=2)
    p_exp.add_argument("--n-max", type=int, default=8)
    p_exp.add_argument("--betas", default="1/2,1,2", help="comma-separated rationals")
    p_exp.add_argument("--seed", type=int, default=None)
    p_exp.add_argument(
        "--algorithms", default=",".join(algorithms),
        help="comma-separated algorithm names",
    )
    p_exp.add_argument(
        "--objective", choices=objectives, default=Objective.MAKESPAN.value
    )
    p_exp.add_argument("--alpha-max", type=int, default=8)
    p_exp.add_argument("--r-max", type=int, default=12)
    p_exp.add_argument("--b", default=None)
    p_exp.add_argument("--max-bruteforce-n", type=int, default=10)
    p_exp.add_argument(
        "--timings", action="store_true",
        help="fill wall_time_ms (breaks byte-identical reruns)",
    )
    p_exp.add_argument("--out", default=None)

    p_pm = sub.add_parser(
        "verify-pm",
        help="build and check the stage-by-stage bounding certificate",
    )
    p_pm.add_argument("--instance", required=True)
    p_pm.add_argument("--max-bruteforce-n", type=int, default=10)
    p_pm.add_argument(
        "--no-reduce", action="store_true",
        help="run the construction directly even when the schedule has gaps",
    )
    p_pm.add_argument("--out", default=None)

    p_cross = sub.add_parser(
        "cross-check", help="check the cross-objective inequalities"
    )
    p_cross.add_argument("--instance", required=True)
    p_cross.add_argument("--max-bruteforce-n", type=int, default=10)
    p_cross.add_argument("--out", default=None)

    return parser


def _cmd_gen(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    spec = FamilySpec(
        family=Family(args.family),
        n=args.n,
        beta=parse_rational(args.beta, "beta"),
        b=None if args.b is None else parse_rational(args.b, "b"),
        seed=seed,
        alpha_max=args.alpha_max,
        r_max=args.r_max,
    )
    _emit(write_instance(generate(spec)), args.out)
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    instance = parse_instance(_read(args.instance))
    schedule = solve(instance, SchedulerChoice(args.algorithm))
    _emit(write_schedule(schedule), args.out)
    return 0


def _cmd_opt(args: argparse.Namespace) -> int:
    instance = parse_instance(_read(args.instance))
    result = brute_force(
        instance, Objective(args.objective), max_n=args.max_bruteforce_n
    )
    doc = {
        "objective": result.objective.value,
        "order": list(result.best_schedule.order),
        "starts": [format_rational(s) for s in result.best_schedule.starts],
        "value": format_rational(result.best_value),
        "permutations_examined": result.permutations_examined,
    }
    _emit(_json(doc), args.out)
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    instance = parse_instance(_read(args.instance))
    schedule = parse_schedule(_read(args.schedule), instance)
    report = evaluate(instance, schedule)
    doc = {
        "order": list(schedule.order),
        "starts": [format_rational(s) for s in report.starts],
        "completions": [format_rational(c) for c in report.completions],
        "gaps": [format_rational(g) for g in report.gaps],
        "makespan": format_rational(report.makespan),
        "total_completion": format_rational(report.total_completion),
    }
    _emit(_json(doc), args.out)
    return 0


def _cmd_experiment(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    config = ExperimentConfig(
        family=Family(args.family),
        trials=args.trials,
        n_min=args.n_min,
        n_max=args.n_max,
        betas=_parse_betas(args.betas),
        seed=seed,
        algorithms=_parse_algorithms(args.algorithms),
        objective=Objective(args.objective),
        alpha_max=args.alpha_max,
        r_max=args.r_max,
        b=None if args.b is None else parse_rational(args.b, "b"),
        max_bruteforce_n=args.max_bruteforce_n,
        timings=args.timings,
    )
    _emit(write_csv(run_experiment(config)), args.out)
    return 0


def _cmd_verify_pm(args: argparse.Namespace) -> int:
    instance = parse_instance(_read(args.instance))
    ni = non_interfering(instance)
    optimal = brute_force(
        instance, Objective.MAKESPAN, max_n=args.max_bruteforce_n
    ).best_schedule
    try:
        report = construct_two_pm(
            instance, ni, optimal, reduce_gaps=not args.no_reduce
        )
    except ConstructionFailed as exc:
        _emit(_json({"verdict": "violation", "detail": str(exc)}), args.out)
        return FOUND_VIOLATION
    stages = [
        {
            "k": k,
            "edges": [list(edge) for edge in report.per_k_matchings[k].edges],
            "load_lhs": format_rational(lhs),
            "load_rhs": format_rational(rhs),
        }
        for k, lhs, rhs in zip(
            sorted(report.per_k_matchings),
            report.per_k_bound_lhs,
            report.per_k_bound_rhs,
        )
    ]
    doc = {
        "verdict": "ok",
        "last_critical_index": report.last_critical_index,
        "reduced": report.reduced,
        "stages": stages,
    }
    _emit(_json(doc), args.out)
    return 0


def _cmd_cross_check(args: argparse.Namespace) -> int:
    instance = parse_instance(_read(args.instance))
    report = cross_objective_check(instance, max_n=args.max_bruteforce_n)
    doc = {
        "checks": [
            {
                "label": check.label,
                "lhs": format_rational(check.lhs),
                "rhs": format_rational(check.rhs),
                "lhs_decimal": decimal_string(check.lhs),
                "rhs_decimal": decimal_string(check.rhs),
                "holds": check.holds,
            }
            for check in report.checks
        ],
        "all_hold": report.all_hold,
    }
    _emit(_json(doc), args.out)
    return 0 if report.all_hold else FOUND_VIOLATION


_COMMANDS = {
    "gen": _cmd_gen,
    "solve": _cmd_solve,
    "opt": _cmd_opt,
    "eval": _cmd_eval,
    "experiment": _cmd_experiment,
    "verify-pm": _cmd_verify_pm,
    "cross-check": _cmd_cross_check,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SchedulingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
