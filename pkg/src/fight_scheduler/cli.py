"""Command-line entry point: ``fight-scheduler <subcommand> ...``.

Exit codes: 0 success / satisfiable, 1 infeasible or failed audit,
2 solver timeout, 3 input or I/O error, 4 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .generator import REGIONS, LEVEL_LABELS, generate_instance, parse_region, render_table, run_batch, to_csv
from .model import (
    FairnessCriteria,
    FormatError,
    Instance,
    RoomPlanError,
    parse_instance,
    parse_schedule,
    render_instance,
    render_schedule,
    room_plan_for,
)
from .order import assign_order_fair
from .simple import simple_schedule
from .solver import INFEASIBLE, SATISFIABLE, TIMEOUT, build_model, solve
from .solver.lp import export_lp
from .solver.search import solve_portfolio
from .validate import validate

log = logging.getLogger("fight_scheduler")

EXIT_OK, EXIT_INFEASIBLE, EXIT_TIMEOUT, EXIT_INPUT, EXIT_USAGE = 0, 1, 2, 3, 4
STATUS_EXIT = {SATISFIABLE: EXIT_OK, INFEASIBLE: EXIT_INFEASIBLE, TIMEOUT: EXIT_TIMEOUT}
SUBCOMMANDS = ("schedule", "validate", "generate", "bench", "export-lp", "order-fair", "simple")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    criteria: FairnessCriteria
    instance: str | None = None
    schedule: str | None = None
    rooms: tuple[int, ...] | None = None
    policy: str | None = None
    time_limit: float = 300.0
    seed: int = 0
    format: str = "machine"
    output: str | None = None


def _criteria_flags(p: argparse.ArgumentParser):
    level = p.add_mutually_exclusive_group()
    level.add_argument("--fair", dest="level", action="store_const", const="fair")
    level.add_argument("--weak", dest="level", action="store_const", const="weak")
    level.add_argument("--strong", dest="level", action="store_const", const="strong")
    level.add_argument("--no-fairness", dest="level", action="store_const", const="none")
    p.add_argument("--non-coop", action="store_true", help="no two teams of one school share a Fight")
    p.add_argument("--order-fair", action="store_true", help="three different presenter stages per team")


def _room_flags(p: argparse.ArgumentParser):
    p.add_argument("--rooms", help="explicit room sizes, e.g. 4,4,4,3")
    p.add_argument("--policy", choices=["international", "min-rooms"], help="derive rooms from the team count")


def _solver_flags(p: argparse.ArgumentParser):
    p.add_argument("--time-limit", type=float, default=300.0, help="seconds (default 300)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--symmetry-breaking", action="store_true", help="order equal-size rooms by smallest team")
    p.add_argument("--workers", type=int, default=1, help="parallel seeded searches (portfolio mode)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fight-scheduler", description="Fair schedules for Young Physicists' Tournament Fights.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("schedule", help="compute a schedule with the constraint solver")
    p.add_argument("instance")
    _criteria_flags(p)
    _room_flags(p)
    _solver_flags(p)
    p.add_argument("--simple", action="store_true", help="build a simple schedule (fixed rooms) instead")
    p.add_argument("--best-effort", action="store_true", help="try strong, then fair, then weak")
    p.add_argument("--format", choices=["table", "machine", "json"], default="machine")
    p.add_argument("-o", "--output", help="write the schedule here instead of stdout")

    p = sub.add_parser("validate", help="audit a schedule against the criteria")
    p.add_argument("instance")
    p.add_argument("schedule")
    _criteria_flags(p)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("generate", help="sample random regional instances")
    p.add_argument("--region", default="bratislava", help="bratislava, kosice or a profile file")
    p.add_argument("--policy", choices=["international", "min-rooms"], default="international")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--resample", action="store_true", help="redraw until a room plan exists")
    p.add_argument("--format", choices=["machine", "json"], default="machine")
    p.add_argument("-o", "--output")

    p = sub.add_parser("bench", help="solve a batch of random instances and tabulate outcomes")
    p.add_argument("--region", default="bratislava")
    p.add_argument("--count", type=int, default=50)
    _criteria_flags(p)
    p.add_argument("--policy", choices=["international", "min-rooms"], default="international")
    _solver_flags(p)
    p.add_argument("--resample", action="store_true")
    p.add_argument("--csv", help="write the CSV report here")
    p.add_argument("--records", help="write per-instance outcomes (CSV) here")

    p = sub.add_parser("export-lp", help="write the constraint model as an LP file")
    p.add_argument("instance")
    _criteria_flags(p)
    _room_flags(p)
    p.add_argument("--symmetry-breaking", action="store_true")
    p.add_argument("-o", "--output")

    p = sub.add_parser("order-fair", help="reassign stages so the schedule is order fair")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.add_argument("--format", choices=["table", "machine", "json"], default="machine")
    p.add_argument("-o", "--output")

    p = sub.add_parser("simple", help="build a simple schedule with graph colorings")
    p.add_argument("instance")
    _room_flags(p)
    p.add_argument("--format", choices=["table", "machine", "json"], default="machine")
    p.add_argument("-o", "--output")
    return parser


def _criteria(args) -> FairnessCriteria:
    level = getattr(args, "level", None)
    non_coop = getattr(args, "non_coop", False)
    order = getattr(args, "order_fair", False)
    if level is None and not non_coop:
        return FairnessCriteria(non_cooperative=True, order_fair=order, fairness="fair")
    return FairnessCriteria(non_cooperative=non_coop, order_fair=order, fairness=level or "none")


def config_from_args(args) -> CliConfig:
    rooms = getattr(args, "rooms", None)
    return CliConfig(
        subcommand=args.command,
        criteria=_criteria(args),
        instance=getattr(args, "instance", None),
        schedule=getattr(args, "schedule", None),
        rooms=tuple(int(x) for x in rooms.split(",")) if rooms and rooms.replace(",", "").isdigit() else None,
        policy=getattr(args, "policy", None),
        time_limit=getattr(args, "time_limit", 300.0),
        seed=getattr(args, "seed", 0),
        format=getattr(args, "format", "machine"),
        output=getattr(args, "output", None),
    )


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc


def _load_instance(args) -> Instance:
    inst = parse_instance(_read(args.instance))
    rooms = getattr(args, "rooms", None)
    policy = getattr(args, "policy", None)
    if rooms:
        try:
            plan = [int(x) for x in rooms.split(",")]
        except ValueError as exc:
            raise UsageError(f"bad --rooms {rooms!r}") from exc
        inst = inst.with_rooms(plan)
    elif policy:
        inst = inst.with_rooms(room_plan_for(inst.n, policy))
    return inst


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _solve(inst: Instance, criteria: FairnessCriteria, args):
    model = build_model(inst, criteria, symmetry_breaking=args.symmetry_breaking)
    if args.workers > 1:
        return solve_portfolio(model, args.time_limit, [args.seed + w for w in range(args.workers)])
    return solve(model, time_limit=args.time_limit, seed=args.seed)


def cmd_schedule(args) -> int:
    inst = _load_instance(args)
    criteria = _criteria(args)
    if args.simple:
        return _finish_simple(inst, criteria, args)
    ladder = [criteria]
    if args.best_effort:
        ladder = [FairnessCriteria(criteria.non_cooperative, criteria.order_fair, lvl) for lvl in ("strong", "fair", "weak")]
    outcome, used = None, criteria
    for crit in ladder:
        outcome = _solve(inst, crit, args)
        log.info("%s: %s after %d nodes, %.2fs", LEVEL_LABELS[crit.fairness], outcome.status,
                 outcome.stats.nodes, outcome.stats.wall_time)
        used = crit
        if outcome.status == SATISFIABLE:
            break
    print(f"# status: {outcome.status} ({LEVEL_LABELS[used.fairness]}, "
          f"{outcome.stats.nodes} nodes, {outcome.stats.wall_time:.2f}s)", file=sys.stderr)
    if outcome.status != SATISFIABLE:
        return STATUS_EXIT[outcome.status]
    sched = outcome.schedule
    if used.order_fair:
        sched = assign_order_fair(inst, sched)
    report = validate(inst, sched, used)
    _emit(render_schedule(inst, sched, args.format, report=report), args.output)
    for line in report.summary_lines():
        print(f"# {line}", file=sys.stderr)
    return EXIT_OK


def _finish_simple(inst: Instance, criteria: FairnessCriteria, args) -> int:
    result = simple_schedule(inst)
    if result.schedule is None:
        print(f"# no simple schedule: {result.reason}", file=sys.stderr)
        return EXIT_INFEASIBLE
    sched = result.schedule
    if criteria.order_fair:
        sched = assign_order_fair(inst, sched)
    report = validate(inst, sched, FairnessCriteria(order_fair=criteria.order_fair))
    _emit(render_schedule(inst, sched, args.format, report=report), args.output)
    return EXIT_OK


def cmd_simple(args) -> int:
    inst = _load_instance(args)
    return _finish_simple(inst, FairnessCriteria(), args)


def cmd_validate(args) -> int:
    inst = parse_instance(_read(args.instance))
    sched = parse_schedule(_read(args.schedule))
    report = validate(inst, sched, _criteria(args))
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print("\n".join(report.summary_lines()))
        print("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_INFEASIBLE


def cmd_order_fair(args) -> int:
    inst = parse_instance(_read(args.instance))
    sched = parse_schedule(_read(args.schedule))
    if not validate(inst, sched).verdicts["feasible"]:
        print("# input schedule is not feasible", file=sys.stderr)
        return EXIT_INFEASIBLE
    out = assign_order_fair(inst, sched)
    report = validate(inst, out, FairnessCriteria(order_fair=True))
    _emit(render_schedule(inst, out, args.format, report=report), args.output)
    return EXIT_OK


def _region(spec: str):
    if spec.lower() in REGIONS:
        return REGIONS[spec.lower()]
    return parse_region(_read(spec))


def cmd_generate(args) -> int:
    inst = generate_instance(_region(args.region), args.seed, args.policy, resample=args.resample)
    if args.format == "json":
        from .model import instance_to_json

        text = json.dumps(instance_to_json(inst), indent=2) + "\n"
    else:
        text = render_instance(inst)
    _emit(text, args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    region = _region(args.region)
    criteria = _criteria(args)

    def progress(rec):
        log.info("instance %d: n=%d rooms=%s %s %.2fs", rec.index, rec.n, list(rec.rooms), rec.status, rec.cpu_time)

    report = run_batch(region, args.count, criteria, args.policy, args.time_limit, args.seed,
                       workers=args.workers, resample=args.resample,
                       symmetry_breaking=args.symmetry_breaking, progress=progress)
    title = f"{region.name}, {args.count} instances, rooms={args.policy}, time limit {args.time_limit:g}s"
    sys.stdout.write(render_table([report], title))
    if args.csv:
        Path(args.csv).write_text(to_csv([report]), encoding="utf-8")
    if args.records:
        lines = ["index,seed,n,rooms,status,cpu_time"]
        for r in report.records:
            lines.append(f"{r.index},{r.seed},{r.n},{'-'.join(map(str, r.rooms))},{r.status},{r.cpu_time:.3f}")
        Path(args.records).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return EXIT_OK


def cmd_export_lp(args) -> int:
    inst = _load_instance(args)
    model = build_model(inst, _criteria(args), symmetry_breaking=args.symmetry_breaking)
    _emit(export_lp(model), args.output)
    return EXIT_OK


COMMANDS = {
    "schedule": cmd_schedule,
    "validate": cmd_validate,
    "generate": cmd_generate,
    "bench": cmd_bench,
    "export-lp": cmd_export_lp,
    "order-fair": cmd_order_fair,
    "simple": cmd_simple,
}


def main(argv=None) -> int:
    level = os.environ.get("FIGHT_SCHEDULER_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        log.debug("%s", config_from_args(args))
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, RoomPlanError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        # downstream reader (e.g. ``head``) closed early
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
