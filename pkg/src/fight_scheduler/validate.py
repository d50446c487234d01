"""Ground-truth checker for feasibility and every fairness criterion.

Every check runs regardless of earlier failures so that audits of sloppy
real-world schedules still get a full report.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .model import ROUNDS, FairnessCriteria, Instance, Schedule

CRITERIA = ("feasible", "non_cooperative", "order_fair", "weakly_fair", "fair", "strongly_fair")


@dataclass(frozen=True)
class Violation:
    """One concrete reason a criterion fails.

    ``rule`` is the criterion name; ``kind`` narrows it for feasibility
    (portfolio, coverage, repeat, occupancy, stages).  For the fairness rules
    ``team`` is the team gaining the advantage and ``other`` the presenter.
    """

    rule: str
    kind: str
    round: int | None = None
    room: int | None = None
    team: str | None = None
    problem: int | None = None
    other: str | None = None

    def __str__(self):
        bits = [f"{self.rule}/{self.kind}"]
        for name in ("round", "room", "team", "problem", "other"):
            v = getattr(self, name)
            if v is not None:
                bits.append(f"{name}={v}")
        return " ".join(bits)


@dataclass(frozen=True)
class ValidationReport:
    verdicts: dict
    witnesses: tuple[Violation, ...]
    requested: tuple[str, ...] = ("feasible",)

    def holds(self, criterion: str) -> bool:
        """Criterion in the definitional sense: feasible and its own condition."""
        return self.verdicts["feasible"] and self.verdicts[criterion]

    @property
    def passed(self) -> bool:
        return all(self.holds(c) for c in self.requested)

    def witnesses_for(self, criterion: str) -> list[Violation]:
        return [w for w in self.witnesses if w.rule == criterion]

    def summary_lines(self) -> list[str]:
        lines = []
        for c in CRITERIA:
            mark = "*" if c in self.requested else " "
            lines.append(f"{mark} {c}: {'yes' if self.holds(c) else 'no'}")
        for w in self.witnesses:
            if w.rule in self.requested:
                lines.append(f"  {w}")
        return lines

    def to_dict(self) -> dict:
        return {
            "verdicts": {c: self.holds(c) for c in CRITERIA},
            "requested": list(self.requested),
            "passed": self.passed,
            "witnesses": [
                {k: v for k, v in w.__dict__.items() if v is not None} for w in self.witnesses
            ],
        }


def validate(instance: Instance, schedule: Schedule, criteria: FairnessCriteria | None = None) -> ValidationReport:
    criteria = criteria or FairnessCriteria()
    found: list[Violation] = []
    found += _feasibility(instance, schedule)
    found += _non_cooperative(instance, schedule)
    found += _order_fair(instance, schedule)
    fair = _fairness(instance, schedule)
    found += fair
    found += [Violation("weakly_fair", w.kind, w.round, w.room, w.team, w.problem, w.other)
              for w in fair if w.round in (1, 2)]
    found += _strong(instance, schedule)
    verdicts = {c: not any(w.rule == c for w in found) for c in CRITERIA}
    return ValidationReport(verdicts, tuple(found), criteria.requested())


def _fights(instance: Instance, schedule: Schedule, j: int) -> dict[int, list[str]]:
    known = set(instance.teams)
    return {k: [t for t in ts if t in known] for k, ts in schedule.fights(j).items()}


def _feasibility(instance: Instance, schedule: Schedule) -> list[Violation]:
    out = []
    known = set(instance.teams)
    for j in ROUNDS:
        rnd = schedule.rounds[j - 1]
        for t in instance.teams:
            if t not in rnd:
                out.append(Violation("feasible", "coverage", j, team=t))
        for t in rnd:
            if t not in known:
                out.append(Violation("feasible", "coverage", j, team=t))
    for t, folio in zip(instance.teams, instance.portfolios):
        presented = [schedule.rounds[j - 1][t].problem for j in ROUNDS if t in schedule.rounds[j - 1]]
        if sorted(presented) != sorted(folio):
            missing = sorted(set(folio) - set(presented))
            out.append(Violation("feasible", "portfolio", team=t, problem=missing[0] if missing else None))
    sizes = dict(enumerate(instance.room_plan, start=1))
    for j in ROUNDS:
        fights = _fights(instance, schedule, j)
        for k in sorted(set(sizes) | set(fights)):
            teams = fights.get(k, [])
            if len(teams) != sizes.get(k, 0):
                out.append(Violation("feasible", "occupancy", j, k))
            slots = [schedule.slot(j, t) for t in teams]
            seen: dict[int, str] = {}
            for t, s in zip(teams, slots):
                if s.problem in seen:
                    out.append(Violation("feasible", "repeat", j, k, t, s.problem, seen[s.problem]))
                else:
                    seen[s.problem] = t
            expected = {"A", "B", "C", "D"} if sizes.get(k) == 4 else {"A", "B", "C"}
            labels = [s.stage for s in slots]
            if sorted(labels) != sorted(expected):
                out.append(Violation("feasible", "stages", j, k))
    return out


def _non_cooperative(instance: Instance, schedule: Schedule) -> list[Violation]:
    school = dict(zip(instance.teams, instance.schools))
    out = []
    for j in ROUNDS:
        for k, teams in _fights(instance, schedule, j).items():
            for a, t in enumerate(teams):
                for u in teams[a + 1:]:
                    if school[t] == school[u]:
                        out.append(Violation("non_cooperative", "same_school", j, k, t, other=u))
    return out


def _order_fair(instance: Instance, schedule: Schedule) -> list[Violation]:
    out = []
    for t in instance.teams:
        stages = [schedule.rounds[j - 1][t].stage for j in ROUNDS if t in schedule.rounds[j - 1]]
        for stage, count in Counter(stages).items():
            if count > 1:
                out.append(Violation("order_fair", f"repeated_stage_{stage}", team=t))
    return out


def _fairness(instance: Instance, schedule: Schedule) -> list[Violation]:
    folio = dict(zip(instance.teams, instance.portfolios))
    out = []
    for j in ROUNDS:
        for k, teams in _fights(instance, schedule, j).items():
            for presenter in teams:
                p = schedule.slot(j, presenter).problem
                for viewer in teams:
                    if viewer != presenter and p in folio[viewer]:
                        out.append(Violation("fair", "sees_own_problem", j, k, viewer, p, presenter))
    return out


def _strong(instance: Instance, schedule: Schedule) -> list[Violation]:
    out = []
    fights = {j: _fights(instance, schedule, j) for j in ROUNDS}
    for t in instance.teams:
        first_seen: dict[int, int] = {}
        for j in ROUNDS:
            if t not in schedule.rounds[j - 1]:
                continue
            k = schedule.slot(j, t).room
            for u in fights[j].get(k, []):
                p = schedule.slot(j, u).problem
                if p in first_seen:
                    out.append(Violation("strongly_fair", "meets_twice", j, k, t, p, u))
                else:
                    first_seen[p] = j
    return out
