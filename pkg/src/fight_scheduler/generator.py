"""Random regional instances and batch solver runs.

A region has some big and some small schools; each school's team count and
each team's portfolio are drawn independently.  Problems come in popularity
classes with relative weights; a portfolio is three sequential weighted
draws, each renormalised over the problems not yet chosen.
"""
from __future__ import annotations

import csv
import io
import random
import statistics
import time
from dataclasses import dataclass, field

from .model import FairnessCriteria, Instance, RoomPlanError, room_plan_for
from .solver import INFEASIBLE, SATISFIABLE, TIMEOUT, build_model, solve
from .validate import validate


@dataclass(frozen=True)
class PopularityClass:
    name: str
    problems: tuple[int, ...]
    weight: float


@dataclass(frozen=True)
class RegionProfile:
    name: str
    big_school_count: int
    small_school_count: int
    big_sizes: tuple[tuple[int, float], ...] = ((2, 0.5), (3, 0.3), (4, 0.2))
    small_sizes: tuple[tuple[int, float], ...] = ((1, 0.75), (2, 0.25))
    classes: tuple[PopularityClass, ...] = (
        PopularityClass("low", tuple(range(1, 9)), 1.0),
        PopularityClass("medium", tuple(range(9, 15)), 2.0),
        PopularityClass("high", tuple(range(15, 18)), 4.0),
    )
    num_problems: int = 17

    def __post_init__(self):
        for dist in (self.big_sizes, self.small_sizes):
            if abs(sum(p for _, p in dist) - 1.0) > 1e-9:
                raise ValueError(f"{self.name}: school size probabilities must sum to 1")
        covered = sorted(p for c in self.classes for p in c.problems)
        if covered != list(range(1, self.num_problems + 1)):
            raise ValueError(f"{self.name}: popularity classes must partition problems 1..{self.num_problems}")
        if any(c.weight <= 0 for c in self.classes):
            raise ValueError("popularity weights must be positive")

    def problem_weights(self) -> dict[int, float]:
        return {p: c.weight for c in self.classes for p in c.problems}


BRATISLAVA = RegionProfile("Bratislava", big_school_count=3, small_school_count=3)
KOSICE = RegionProfile("Kosice", big_school_count=2, small_school_count=6)
REGIONS = {"bratislava": BRATISLAVA, "kosice": KOSICE}


def parse_region(text: str) -> RegionProfile:
    """Read a region profile from ``key=value`` lines (``#`` comments allowed).

    Keys: name, big_schools, small_schools, big_sizes, small_sizes, classes,
    problems.  Distributions are ``2:0.5,3:0.3,4:0.2``; classes are
    ``low:1-8:1,medium:9-14:2,high:15-17:4``.
    """
    fields: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        for token in line.split():
            key, _, value = token.partition("=")
            if not value:
                raise ValueError(f"expected key=value, got {token!r}")
            fields[key] = value

    def dist(s):
        return tuple((int(a), float(b)) for a, b in (x.split(":") for x in s.split(",")))

    kwargs = {}
    if "big_sizes" in fields:
        kwargs["big_sizes"] = dist(fields["big_sizes"])
    if "small_sizes" in fields:
        kwargs["small_sizes"] = dist(fields["small_sizes"])
    if "classes" in fields:
        classes = []
        for part in fields["classes"].split(","):
            name, span, weight = part.split(":")
            lo, _, hi = span.partition("-")
            classes.append(PopularityClass(name, tuple(range(int(lo), int(hi or lo) + 1)), float(weight)))
        kwargs["classes"] = tuple(classes)
    if "problems" in fields:
        kwargs["num_problems"] = int(fields["problems"])
    return RegionProfile(
        fields.get("name", "custom"),
        int(fields["big_schools"]),
        int(fields["small_schools"]),
        **kwargs,
    )


def _draw(rng: random.Random, dist) -> int:
    values = [v for v, _ in dist]
    return rng.choices(values, weights=[p for _, p in dist])[0]


def draw_portfolio(rng: random.Random, weights: dict[int, float]) -> tuple[int, int, int]:
    pool = dict(weights)
    chosen = []
    for _ in range(3):
        problems = sorted(pool)
        pick = rng.choices(problems, weights=[pool[p] for p in problems])[0]
        chosen.append(pick)
        del pool[pick]
    return tuple(chosen)


def sample_teams(region: RegionProfile, rng: random.Random):
    """Team ids, schools and portfolios for one sampled region."""
    weights = region.problem_weights()
    teams, schools, portfolios = [], [], []
    specs = [("B", i, region.big_sizes) for i in range(1, region.big_school_count + 1)]
    specs += [("S", i, region.small_sizes) for i in range(1, region.small_school_count + 1)]
    for kind, number, dist in specs:
        school = f"{kind}{number}"
        for t in range(1, _draw(rng, dist) + 1):
            teams.append(f"{school}.{t}")
            schools.append(school)
            portfolios.append(draw_portfolio(rng, weights))
    return teams, schools, portfolios


def generate_instance(region: RegionProfile, seed: int, room_policy: str = "international",
                      resample: bool = False) -> Instance:
    """Sample an instance; raises RoomPlanError when the team count has no room plan.

    With ``resample`` the draw is repeated (same seed stream) until a room
    plan exists.
    """
    rng = random.Random(seed)
    while True:
        teams, schools, portfolios = sample_teams(region, rng)
        try:
            rooms = room_plan_for(len(teams), room_policy)
        except RoomPlanError:
            if resample:
                continue
            raise
        return Instance(tuple(teams), tuple(schools), tuple(portfolios), tuple(rooms), region.num_problems)


@dataclass(frozen=True)
class RunRecord:
    index: int
    seed: int
    n: int
    rooms: tuple[int, ...]
    status: str  # satisfiable, infeasible, timeout, unconstructible
    cpu_time: float
    wall_time: float


@dataclass(frozen=True)
class BatchReport:
    label: str
    records: tuple[RunRecord, ...]

    def _with(self, status):
        return [r for r in self.records if r.status == status]

    @property
    def count(self) -> int:
        return len(self.records)

    def counts(self) -> dict[str, int]:
        return {
            "infeasible": len(self._with(INFEASIBLE)),
            "undecided": len(self._with(TIMEOUT)),
            "feasible": len(self._with(SATISFIABLE)),
            "unconstructible": len(self._with("unconstructible")),
        }

    def ratios(self) -> dict[str, float]:
        return {k: v / self.count for k, v in self.counts().items()}

    def cpu(self, status: str) -> tuple[float | None, float | None]:
        times = [r.cpu_time for r in self._with(status)]
        if not times:
            return None, None
        return statistics.median(times), max(times)

    def row(self) -> dict:
        c, r = self.counts(), self.ratios()
        fm, fx = self.cpu(SATISFIABLE)
        im, ix = self.cpu(INFEASIBLE)
        row = {"criterion": self.label}
        for key in ("infeasible", "undecided", "feasible"):
            row[key] = c[key]
            row[f"{key}_ratio"] = round(r[key], 4)
        row.update(feasible_median=fm, feasible_max=fx, infeasible_median=im, infeasible_max=ix)
        if c["unconstructible"]:
            row["unconstructible"] = c["unconstructible"]
        return row


CSV_COLUMNS = [
    "criterion", "infeasible", "infeasible_ratio", "undecided", "undecided_ratio",
    "feasible", "feasible_ratio", "feasible_median", "feasible_max", "infeasible_median", "infeasible_max",
]


def to_csv(reports: list[BatchReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for rep in reports:
        row = rep.row()
        writer.writerow({k: ("n.a." if v is None else (f"{v:.2f}" if isinstance(v, float) and "ratio" not in k else v))
                         for k, v in row.items()})
    return buf.getvalue()


def render_table(reports: list[BatchReport], title: str = "") -> str:
    def cell(count, ratio):
        return f"{count} ({round(100 * ratio)}%)"

    def t(v):
        return "n.a." if v is None else f"{v:.2f}"

    head = ["Criterion", "infeasible", "undecided", "feasible", "feas. median", "feas. max", "infeas. median", "infeas. max"]
    rows = [head]
    for rep in reports:
        r = rep.row()
        rows.append([
            r["criterion"],
            cell(r["infeasible"], r["infeasible_ratio"]),
            cell(r["undecided"], r["undecided_ratio"]),
            cell(r["feasible"], r["feasible_ratio"]),
            t(r["feasible_median"]), t(r["feasible_max"]),
            t(r["infeasible_median"]), t(r["infeasible_max"]),
        ])
    widths = [max(len(row[c]) for row in rows) for c in range(len(head))]
    lines = [title] if title else []
    for idx, row in enumerate(rows):
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
        if idx == 0:
            lines.append("-" * len(lines[-1]))
    return "\n".join(lines) + "\n"


LEVEL_LABELS = {"none": "Feasible", "weak": "Weakly fair", "fair": "Fair", "strong": "Strongly fair"}


def instance_seeds(seed: int, count: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(63) for _ in range(count)]


def _run_one(args):
    index, inst_seed, region, criteria, room_policy, time_limit, resample, symmetry = args
    try:
        inst = generate_instance(region, inst_seed, room_policy, resample=resample)
    except RoomPlanError:
        return RunRecord(index, inst_seed, -1, (), "unconstructible", 0.0, 0.0)
    model = build_model(inst, criteria, symmetry_breaking=symmetry)
    cpu0 = time.process_time()
    outcome = solve(model, time_limit=time_limit, seed=0)
    cpu = time.process_time() - cpu0
    if outcome.status == SATISFIABLE:
        assert validate(inst, outcome.schedule, criteria).passed
    return RunRecord(index, inst_seed, inst.n, inst.room_plan, outcome.status, cpu, outcome.stats.wall_time)


def run_batch(region: RegionProfile, count: int, criteria: FairnessCriteria,
              room_policy: str = "international", time_limit: float = 300.0, seed: int = 0,
              workers: int = 1, resample: bool = False, symmetry_breaking: bool = False,
              progress=None) -> BatchReport:
    """Generate ``count`` instances, solve each and tabulate the outcomes."""
    if count < 1:
        raise ValueError("count must be at least 1")
    jobs = [
        (idx, s, region, criteria, room_policy, time_limit, resample, symmetry_breaking)
        for idx, s in enumerate(instance_seeds(seed, count))
    ]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_one, jobs))
    else:
        records = []
        for job in jobs:
            records.append(_run_one(job))
            if progress:
                progress(records[-1])
    records.sort(key=lambda r: r.index)
    return BatchReport(LEVEL_LABELS[criteria.fairness], tuple(records))
