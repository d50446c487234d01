"""Domain types for tournament instances and schedules, plus their file formats.

Rounds, rooms and problems are 1-based everywhere in the public API; teams
are addressed by their string id.  Instance and schedule files are plain
text (see ``docs/formats.md``) with a JSON mirror using the same field names.
"""
from __future__ import annotations

import json
import re
from collections import defaultdict
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

ROUNDS = (1, 2, 3)
STAGES = ("A", "B", "C", "D")
DEFAULT_PROBLEMS = 17
FAIRNESS_LEVELS = ("none", "weak", "fair", "strong")


class FormatError(ValueError):
    """Raised when instance or schedule input is malformed."""


class RoomPlanError(ValueError):
    """Raised when no {3,4}-room composition exists for a team count."""


@dataclass(frozen=True)
class Instance:
    teams: tuple[str, ...]
    schools: tuple[str, ...]
    portfolios: tuple[tuple[int, int, int], ...]
    room_plan: tuple[int, ...]
    num_problems: int = DEFAULT_PROBLEMS

    def __post_init__(self):
        n = len(self.teams)
        if n < 3:
            raise FormatError(f"need at least 3 teams, got {n}")
        if len(set(self.teams)) != n:
            raise FormatError("duplicate team id")
        if len(self.schools) != n or len(self.portfolios) != n:
            raise FormatError("schools/portfolios must have one entry per team")
        for team, folio in zip(self.teams, self.portfolios):
            if len(folio) != 3:
                raise FormatError(f"team {team}: portfolio size {len(folio)} != 3")
            if len(set(folio)) != 3:
                raise FormatError(f"team {team}: duplicate problem in portfolio {folio}")
            for p in folio:
                if not 1 <= p <= self.num_problems:
                    raise FormatError(f"team {team}: unknown problem {p}")
        for size in self.room_plan:
            if size not in (3, 4):
                raise FormatError(f"room size must be 3 or 4, got {size}")
        if sum(self.room_plan) != n:
            raise FormatError(
                f"room plan {list(self.room_plan)} seats {sum(self.room_plan)} teams, instance has {n}"
            )

    @property
    def n(self) -> int:
        return len(self.teams)

    @property
    def problems(self) -> tuple[int, ...]:
        return tuple(range(1, self.num_problems + 1))

    def index(self, team: str) -> int:
        return self.teams.index(team)

    def portfolio(self, team: str) -> tuple[int, int, int]:
        return self.portfolios[self.teams.index(team)]

    def school_groups(self) -> dict[str, tuple[str, ...]]:
        groups: dict[str, list[str]] = defaultdict(list)
        for team, school in zip(self.teams, self.schools):
            groups[school].append(team)
        return {s: tuple(ts) for s, ts in groups.items()}

    # compact accessors used by the constraint model; i is a 0-based team index
    def problem_at(self, i: int, q: int) -> int:
        """Problem at 1-based portfolio position ``q`` of team ``i``."""
        return self.portfolios[i][q - 1]

    def holders(self, problem: int) -> list[tuple[int, int]]:
        """All (team index, position) pairs whose portfolio holds ``problem``."""
        return [
            (i, q)
            for i, folio in enumerate(self.portfolios)
            for q, p in enumerate(folio, start=1)
            if p == problem
        ]

    def has(self, i: int, problem: int) -> bool:
        return problem in self.portfolios[i]

    def with_rooms(self, room_plan: Sequence[int]) -> "Instance":
        return Instance(self.teams, self.schools, self.portfolios, tuple(room_plan), self.num_problems)


def room_plan_for(n: int, policy: str = "international") -> list[int]:
    """Room sizes for ``n`` teams, 4-rooms listed first.

    ``international`` uses exactly ``n mod 3`` rooms of four; ``min_rooms``
    uses as many 4-rooms as possible, which minimises the room count.
    """
    if n < 3:
        raise RoomPlanError(f"cannot seat {n} teams")
    policy = policy.replace("-", "_")
    if policy == "international":
        fours = n % 3
        threes = (n - 4 * fours) // 3
        if threes < 0:
            raise RoomPlanError(f"{n} teams cannot use {fours} room(s) of four")
        return [4] * fours + [3] * threes
    if policy == "min_rooms":
        for fours in range(n // 4, -1, -1):
            rest = n - 4 * fours
            if rest % 3 == 0:
                return [4] * fours + [3] * (rest // 3)
        raise RoomPlanError(f"no 3/4-room composition for {n} teams")
    raise ValueError(f"unknown room policy {policy!r}")


@dataclass(frozen=True)
class FairnessCriteria:
    non_cooperative: bool = False
    order_fair: bool = False
    fairness: str = "none"

    def __post_init__(self):
        if self.fairness not in FAIRNESS_LEVELS:
            raise ValueError(f"fairness level must be one of {FAIRNESS_LEVELS}")

    def requested(self) -> tuple[str, ...]:
        names = ["feasible"]
        if self.non_cooperative:
            names.append("non_cooperative")
        if self.order_fair:
            names.append("order_fair")
        names += {"none": [], "weak": ["weakly_fair"], "fair": ["fair"], "strong": ["strongly_fair"]}[
            self.fairness
        ]
        return tuple(names)


@dataclass(frozen=True)
class Slot:
    problem: int
    room: int
    stage: str


@dataclass(frozen=True, eq=False)
class Schedule:
    """Per-round assignment ``team -> Slot``; ``rounds[0]`` is round 1."""

    rounds: tuple[Mapping[str, Slot], ...]

    def __post_init__(self):
        frozen = tuple(MappingProxyType(dict(r)) for r in self.rounds)
        object.__setattr__(self, "rounds", frozen)

    def __eq__(self, other):
        if not isinstance(other, Schedule):
            return NotImplemented
        return [dict(r) for r in self.rounds] == [dict(r) for r in other.rounds]

    def __hash__(self):
        return hash(tuple(frozenset(r.items()) for r in self.rounds))

    @classmethod
    def from_entries(cls, entries: Iterable[tuple[int, int, str, str, int]]) -> "Schedule":
        """Build from ``(round, room, stage, team, problem)`` tuples."""
        rounds: list[dict[str, Slot]] = [{} for _ in ROUNDS]
        for j, room, stage, team, problem in entries:
            if j not in ROUNDS:
                raise FormatError(f"round must be 1..3, got {j}")
            if stage not in STAGES:
                raise FormatError(f"bad stage label {stage!r}")
            if team in rounds[j - 1]:
                raise FormatError(f"team {team} listed twice in round {j}")
            rounds[j - 1][team] = Slot(problem, room, stage)
        return cls(tuple(rounds))

    def entries(self) -> list[tuple[int, int, str, str, int]]:
        out = []
        for j, assignment in zip(ROUNDS, self.rounds):
            for team, s in assignment.items():
                out.append((j, s.room, s.stage, team, s.problem))
        out.sort(key=lambda e: (e[0], e[1], e[2], e[3]))
        return out

    def slot(self, j: int, team: str) -> Slot:
        return self.rounds[j - 1][team]

    def fights(self, j: int) -> dict[int, list[str]]:
        """Room -> teams in round ``j``, each list ordered by stage."""
        rooms: dict[int, list[str]] = defaultdict(list)
        for team, s in sorted(self.rounds[j - 1].items(), key=lambda kv: (kv[1].room, kv[1].stage, kv[0])):
            rooms[s.room].append(team)
        return dict(sorted(rooms.items()))

    def with_stages(self, stages: Mapping[tuple[int, str], str]) -> "Schedule":
        """Copy with stage labels replaced; ``stages`` maps (round, team) -> label."""
        return Schedule(
            tuple(
                {t: Slot(s.problem, s.room, stages[(j, t)]) for t, s in r.items()}
                for j, r in zip(ROUNDS, self.rounds)
            )
        )


# ---------------------------------------------------------------------------
# instance files

_HEADER = re.compile(r"^teams=(\d+)\s+problems=(\d+)\s+rooms=([\d,\s]*)$")


def _content_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def parse_instance(text: str) -> Instance:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return instance_from_json(json.loads(stripped))
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty instance file")
    m = _HEADER.match(lines[0])
    if not m:
        raise FormatError(f"bad header line {lines[0]!r}")
    n, num_problems = int(m.group(1)), int(m.group(2))
    try:
        rooms = tuple(int(x) for x in m.group(3).replace(" ", "").split(",") if x)
    except ValueError as exc:
        raise FormatError(f"bad room list {m.group(3)!r}") from exc
    teams, schools, portfolios = [], [], []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 5:
            raise FormatError(f"team line needs 'id school p q r', got {line!r} (portfolio size must be 3)")
        try:
            folio = tuple(int(p) for p in parts[2:])
        except ValueError as exc:
            raise FormatError(f"non-integer problem in {line!r}") from exc
        teams.append(parts[0])
        schools.append(parts[1])
        portfolios.append(folio)
    if len(teams) != n:
        raise FormatError(f"header says {n} teams, found {len(teams)}")
    return Instance(tuple(teams), tuple(schools), tuple(portfolios), rooms, num_problems)


def instance_from_json(data: Mapping) -> Instance:
    try:
        teams = data["teams"]
        return Instance(
            tuple(t["id"] for t in teams),
            tuple(str(t["school"]) for t in teams),
            tuple(tuple(int(p) for p in t["portfolio"]) for t in teams),
            tuple(int(r) for r in data["rooms"]),
            int(data.get("problems", DEFAULT_PROBLEMS)),
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed instance JSON: {exc}") from exc


def instance_to_json(instance: Instance) -> dict:
    return {
        "teams": [
            {"id": t, "school": s, "portfolio": list(f)}
            for t, s, f in zip(instance.teams, instance.schools, instance.portfolios)
        ],
        "problems": instance.num_problems,
        "rooms": list(instance.room_plan),
    }


def render_instance(instance: Instance) -> str:
    rooms = ",".join(str(r) for r in instance.room_plan)
    lines = [f"teams={instance.n} problems={instance.num_problems} rooms={rooms}"]
    for t, s, f in zip(instance.teams, instance.schools, instance.portfolios):
        lines.append(f"{t} {s} {f[0]} {f[1]} {f[2]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# schedule files


def parse_schedule(text: str) -> Schedule:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return schedule_from_json(json.loads(stripped))
    entries = []
    for line in _content_lines(text):
        parts = line.split()
        if len(parts) != 5:
            raise FormatError(f"schedule line needs 'round room stage team problem', got {line!r}")
        j, room, stage, team, problem = parts
        try:
            entries.append((int(j), int(room), stage, team, int(problem)))
        except ValueError as exc:
            raise FormatError(f"non-integer field in {line!r}") from exc
    schedule = Schedule.from_entries(entries)
    for j, r in zip(ROUNDS, schedule.rounds):
        if not r:
            raise FormatError(f"round {j} missing from schedule")
    return schedule


def schedule_from_json(data: Mapping) -> Schedule:
    try:
        entries = [
            (int(e["round"]), int(e["room"]), e["stage"], e["team"], int(e["problem"]))
            for e in data["entries"]
        ]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed schedule JSON: {exc}") from exc
    schedule = Schedule.from_entries(entries)
    for j, r in zip(ROUNDS, schedule.rounds):
        if not r:
            raise FormatError(f"round {j} missing from schedule")
    return schedule


def schedule_to_json(schedule: Schedule) -> dict:
    return {
        "entries": [
            {"round": j, "room": k, "stage": st, "team": t, "problem": p}
            for j, k, st, t, p in schedule.entries()
        ]
    }


def render_schedule(
    instance: Instance,
    schedule: Schedule,
    format: str = "machine",
    report=None,
) -> str:
    """Render as ``machine`` (the schedule file format), ``json`` or ``table``.

    A validation ``report`` is appended as ``#`` comment lines for the text
    formats, which the parser skips.
    """
    if format == "json":
        data = schedule_to_json(schedule)
        if report is not None:
            data["report"] = report.to_dict()
        return json.dumps(data, indent=2) + "\n"
    if format == "machine":
        body = "".join(f"{j} {k} {st} {t} {p}\n" for j, k, st, t, p in schedule.entries())
    elif format == "table":
        body = _render_table(instance, schedule)
    else:
        raise ValueError(f"unknown format {format!r}")
    if report is not None:
        body += "".join(f"# {line}\n" for line in report.summary_lines())
    return body


def _render_table(instance: Instance, schedule: Schedule) -> str:
    rooms = list(range(1, len(instance.room_plan) + 1))
    width = max([len(t) for t in instance.teams] + [6]) + 4
    out = []
    for j in ROUNDS:
        by_room_stage = {(s.room, s.stage): (t, s.problem) for t, s in schedule.rounds[j - 1].items()}
        out.append(f"Round {j}")
        out.append(("     " + "".join(f"Room {k}".ljust(width) for k in rooms)).rstrip())
        for stage in STAGES:
            cells = []
            for k in rooms:
                hit = by_room_stage.get((k, stage))
                cells.append((f"{hit[0]} {hit[1]}" if hit else "").ljust(width))
            if any(c.strip() for c in cells):
                out.append(f"  {stage}  " + "".join(cells).rstrip())
        out.append("")
    return "\n".join(out)
