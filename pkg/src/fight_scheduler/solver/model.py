"""Linear 0/1 model of the scheduling problem.

``x[i,j,k,q] = 1`` when team i presents the q-th problem of its portfolio in
round j in room k.  Strong fairness adds ``y[i,j,k,l] >= 1`` whenever team i
meets problem l in that Fight.  Every row carries a tag naming the family it
belongs to; indices in names and ``Constraint.index`` are 1-based.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from ..model import FairnessCriteria, Instance

TAGS = ("feas-2", "feas-3", "feas-4", "feas-6", "fair-7", "sfair-8", "sfair-9", "noncoop-10")
SYMMETRY_TAG = "symm-room"


@dataclass(frozen=True)
class Constraint:
    tag: str
    index: tuple[int, ...]
    terms: tuple[tuple[int, int], ...]  # (variable id, coefficient)
    sense: str  # "=", "<=" or ">="
    rhs: int

    @property
    def name(self) -> str:
        return f"{self.tag}[{','.join(map(str, self.index))}]"

    def bounds(self) -> tuple[float, float]:
        inf = float("inf")
        return {
            "=": (self.rhs, self.rhs),
            "<=": (-inf, self.rhs),
            ">=": (self.rhs, inf),
        }[self.sense]

    def satisfied_by(self, values) -> bool:
        total = sum(a * values[v] for v, a in self.terms)
        lo, hi = self.bounds()
        return lo <= total <= hi


@dataclass(frozen=True)
class ConstraintModel:
    instance: Instance
    criteria: FairnessCriteria
    var_names: tuple[str, ...]
    num_x: int
    constraints: tuple[Constraint, ...]
    symmetry_breaking: bool = False

    @property
    def n(self) -> int:
        return self.instance.n

    @property
    def s(self) -> int:
        return len(self.instance.room_plan)

    @property
    def num_vars(self) -> int:
        return len(self.var_names)

    def x(self, i: int, j: int, k: int, q: int) -> int:
        """Variable id for 0-based team i, round j, room k, position q."""
        return ((i * 3 + j) * self.s + k) * 3 + q

    def x_coords(self, v: int) -> tuple[int, int, int, int]:
        v, q = divmod(v, 3)
        v, k = divmod(v, self.s)
        i, j = divmod(v, 3)
        return i, j, k, q

    def y(self, i: int, j: int, k: int, l: int) -> int:
        """Variable id for y of 0-based team, round, room and problem."""
        m = self.instance.num_problems
        return self.num_x + ((i * 3 + j) * self.s + k) * m + l

    def count_by_tag(self) -> dict[str, int]:
        counts: dict[str, int] = defaultdict(int)
        for c in self.constraints:
            counts[c.tag] += 1
        return dict(counts)


def build_model(instance: Instance, criteria: FairnessCriteria, symmetry_breaking: bool = False) -> ConstraintModel:
    n, s, m = instance.n, len(instance.room_plan), instance.num_problems
    sizes = instance.room_plan
    num_x = 9 * n * s
    names = [""] * num_x
    strong = criteria.fairness == "strong"
    if strong:
        names += [""] * (3 * n * s * m)

    def X(i, j, k, q):
        return ((i * 3 + j) * s + k) * 3 + q

    def Y(i, j, k, l):
        return num_x + ((i * 3 + j) * s + k) * m + l

    for i in range(n):
        for j in range(3):
            for k in range(s):
                for q in range(3):
                    names[X(i, j, k, q)] = f"x_{i + 1}_{j + 1}_{k + 1}_{q + 1}"
                if strong:
                    for l in range(m):
                        names[Y(i, j, k, l)] = f"y_{i + 1}_{j + 1}_{k + 1}_{l + 1}"

    rows: list[Constraint] = []
    add = rows.append
    holders = {l: instance.holders(l + 1) for l in range(m)}  # 0-based problem -> [(i, q 1-based)]

    for i in range(n):
        for q in range(3):
            terms = tuple((X(i, j, k, q), 1) for j in range(3) for k in range(s))
            add(Constraint("feas-2", (i + 1, q + 1), terms, "=", 1))
    for i in range(n):
        for j in range(3):
            terms = tuple((X(i, j, k, q), 1) for k in range(s) for q in range(3))
            add(Constraint("feas-3", (i + 1, j + 1), terms, "=", 1))
    for j in range(3):
        for k in range(s):
            terms = tuple((X(i, j, k, q), 1) for i in range(n) for q in range(3))
            add(Constraint("feas-4", (j + 1, k + 1), terms, "=", sizes[k]))
    for j in range(3):
        for k in range(s):
            for l in range(m):
                if holders[l]:
                    terms = tuple((X(i, j, k, q - 1), 1) for i, q in holders[l])
                    add(Constraint("feas-6", (j + 1, k + 1, l + 1), terms, "<=", 1))

    if criteria.fairness in ("weak", "fair"):
        rounds = range(2) if criteria.fairness == "weak" else range(3)
        for j in rounds:
            for k in range(s):
                for i in range(n):
                    for q in range(3):
                        problem = instance.problem_at(i, q + 1)
                        for a in range(n):
                            # c = 0 rows can never bind and are left out
                            if a == i or not instance.has(a, problem):
                                continue
                            terms = ((X(i, j, k, q), 1),) + tuple((X(a, j, k, w), 1) for w in range(3))
                            add(Constraint("fair-7", (j + 1, k + 1, q + 1, i + 1, a + 1), terms, "<=", 1))

    if strong:
        for i in range(n):
            for j in range(3):
                for k in range(s):
                    for l in range(m):
                        coef: dict[int, int] = {Y(i, j, k, l): 1}
                        for w in range(3):
                            coef[X(i, j, k, w)] = coef.get(X(i, j, k, w), 0) - 1
                        for a, q in holders[l]:
                            coef[X(a, j, k, q - 1)] = coef.get(X(a, j, k, q - 1), 0) - 1
                        add(Constraint("sfair-8", (i + 1, j + 1, k + 1, l + 1), tuple(coef.items()), ">=", -1))
        for i in range(n):
            for l in range(m):
                terms = tuple((Y(i, j, k, l), 1) for j in range(3) for k in range(s))
                add(Constraint("sfair-9", (i + 1, l + 1), terms, "<=", 1))

    if criteria.non_cooperative:
        for lam, (school, members) in enumerate(instance.school_groups().items(), start=1):
            if len(members) < 2:
                continue
            idx = [instance.index(t) for t in members]
            for j in range(3):
                for k in range(s):
                    terms = tuple((X(i, j, k, q), 1) for i in idx for q in range(3))
                    add(Constraint("noncoop-10", (j + 1, k + 1, lam), terms, "<=", 1))

    if symmetry_breaking:
        # equal-size rooms of a round are ordered by the smallest team they host:
        # team i may enter room k only if room k-1 already hosts a team below i
        for j in range(3):
            for k in range(1, s):
                if sizes[k] != sizes[k - 1]:
                    continue
                for i in range(n):
                    terms = tuple((X(i, j, k, q), 1) for q in range(3)) + tuple(
                        (X(b, j, k - 1, q), -1) for b in range(i) for q in range(3)
                    )
                    add(Constraint(SYMMETRY_TAG, (j + 1, k + 1, i + 1), terms, "<=", 0))

    return ConstraintModel(instance, criteria, tuple(names), num_x, tuple(rows), symmetry_breaking)
