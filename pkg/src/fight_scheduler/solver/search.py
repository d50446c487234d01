"""Complete propagate-and-branch search over a ConstraintModel.

All variables are 0/1.  Each linear row keeps its current minimum and
maximum activity; a row whose slack drops below one of its coefficients
forces the matching variables.  Branching picks the unresolved
"team i plays exactly once in round j" row with the fewest free cells and
tries its cells set to 1 in order, refuting each failed cell before the next.
"""
from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field

from ..model import STAGES, Schedule, Slot
from .model import ConstraintModel

log = logging.getLogger(__name__)

SATISFIABLE = "satisfiable"
INFEASIBLE = "infeasible"
TIMEOUT = "timeout"


class MalformedAssignment(ValueError):
    pass


@dataclass(frozen=True)
class SolveStats:
    nodes: int
    propagations: int
    wall_time: float


@dataclass(frozen=True)
class SolveOutcome:
    status: str
    schedule: Schedule | None
    stats: SolveStats
    assignment: tuple[int, ...] | None = None


class _Conflict(Exception):
    pass


class _Engine:
    def __init__(self, model: ConstraintModel):
        nv = model.num_vars
        rows = model.constraints
        self.value = [-1] * nv
        self.occ: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
        self.lo, self.hi, self.minact, self.maxact, self.maxabs = [], [], [], [], []
        self.rows = [r.terms for r in rows]
        for c, row in enumerate(rows):
            lo, hi = row.bounds()
            self.lo.append(lo)
            self.hi.append(hi)
            self.minact.append(sum(a for _, a in row.terms if a < 0))
            self.maxact.append(sum(a for _, a in row.terms if a > 0))
            self.maxabs.append(max((abs(a) for _, a in row.terms), default=0))
            for v, a in row.terms:
                self.occ[v].append((c, a))
        self.trail: list[int] = []
        self.propagations = 0

    def assign(self, v: int, val: int, queue: list[int]):
        self.value[v] = val
        self.trail.append(v)
        self.propagations += 1
        minact, maxact, lo, hi, maxabs = self.minact, self.maxact, self.lo, self.hi, self.maxabs
        conflict = False
        for c, a in self.occ[v]:
            if val:
                if a > 0:
                    minact[c] += a
                else:
                    maxact[c] += a
            else:
                if a > 0:
                    maxact[c] -= a
                else:
                    minact[c] -= a
            mn, mx = minact[c], maxact[c]
            if mn > hi[c] or mx < lo[c]:
                conflict = True
            elif mn + maxabs[c] > hi[c] or mx - maxabs[c] < lo[c]:
                queue.append(c)
        # counters must be complete before raising so undo_to stays exact
        if conflict:
            raise _Conflict

    def propagate(self, queue: list[int]):
        value, rows, lo, hi = self.value, self.rows, self.lo, self.hi
        while queue:
            c = queue.pop()
            for v, a in rows[c]:
                if value[v] != -1:
                    continue
                mn, mx = self.minact[c], self.maxact[c]
                if a > 0:
                    if mn + a > hi[c]:
                        self.assign(v, 0, queue)
                    elif mx - a < lo[c]:
                        self.assign(v, 1, queue)
                else:
                    if mn - a > hi[c]:
                        self.assign(v, 1, queue)
                    elif mx + a < lo[c]:
                        self.assign(v, 0, queue)

    def undo_to(self, mark: int):
        value, minact, maxact = self.value, self.minact, self.maxact
        while len(self.trail) > mark:
            v = self.trail.pop()
            val = value[v]
            value[v] = -1
            for c, a in self.occ[v]:
                if val:
                    if a > 0:
                        minact[c] -= a
                    else:
                        maxact[c] -= a
                else:
                    if a > 0:
                        maxact[c] += a
                    else:
                        minact[c] += a

    def try_assign(self, v: int, val: int) -> bool:
        """Assign and propagate; on conflict the caller undoes to its mark."""
        queue: list[int] = []
        try:
            self.assign(v, val, queue)
            self.propagate(queue)
        except _Conflict:
            return False
        return True


def solve(model: ConstraintModel, time_limit: float = 300.0, seed: int = 0) -> SolveOutcome:
    start = time.monotonic()
    deadline = start + time_limit
    eng = _Engine(model)
    value = eng.value

    # initial propagation of every row
    ok = all(eng.minact[c] <= eng.hi[c] and eng.maxact[c] >= eng.lo[c] for c in range(len(eng.rows)))
    try:
        if ok:
            eng.propagate(list(range(len(eng.rows))))
    except _Conflict:
        ok = False
    if not ok:
        return SolveOutcome(INFEASIBLE, None, SolveStats(0, eng.propagations, time.monotonic() - start))

    order = list(range(model.n))
    random.Random(seed).shuffle(order) if seed else None
    rank = {i: r for r, i in enumerate(order)}
    groups = [
        (rank[c.index[0] - 1], c.index[1], [v for v, _ in c.terms])
        for c in model.constraints
        if c.tag == "feas-3"
    ]
    groups.sort(key=lambda g: (g[0], g[1]))
    groups = [g[2] for g in groups]
    rest = list(range(model.num_x, model.num_vars))

    def pick():
        best, best_free = None, None
        for cells in groups:
            free = []
            done = False
            for v in cells:
                val = value[v]
                if val == 1:
                    done = True
                    break
                if val == -1:
                    free.append(v)
            if done:
                continue
            if best is None or len(free) < len(best_free):
                best, best_free = cells, free
                if len(free) <= 1:
                    break
        if best is not None:
            return best_free
        for v in rest:
            if value[v] == -1:
                return [v]
        return None

    # 2-way branching; a frame is (trail mark, variable, tried its alternative yet)
    nodes = 0
    stack: list[tuple[int, int, bool]] = []
    status = None
    cands = pick()
    while status is None:
        if cands is None:
            status = SATISFIABLE
            break
        nodes += 1
        if nodes % 128 == 0 and time.monotonic() > deadline:
            status = TIMEOUT
            break
        v = cands[0]
        first = 1 if v < model.num_x else 0
        stack.append((len(eng.trail), v, False))
        if eng.try_assign(v, first):
            cands = pick()
            continue
        # unwind until some frame can take its alternative value
        while True:
            if not stack:
                status = INFEASIBLE
                break
            mark, v, flipped = stack.pop()
            eng.undo_to(mark)
            if flipped:
                continue
            stack.append((mark, v, True))
            first = 1 if v < model.num_x else 0
            if eng.try_assign(v, 1 - first):
                cands = pick()
                break
    elapsed = time.monotonic() - start
    stats = SolveStats(nodes, eng.propagations, elapsed)
    if status == SATISFIABLE:
        assignment = tuple(max(val, 0) for val in value)
        return SolveOutcome(status, decode(model, assignment), stats, assignment)
    return SolveOutcome(status, None, stats)


def decode(model: ConstraintModel, assignment) -> Schedule:
    """Turn a 0/1 assignment into a Schedule; stages follow team index within each Fight."""
    inst = model.instance
    n, s = model.n, model.s
    feas = [c for c in model.constraints if c.tag in ("feas-2", "feas-3", "feas-4", "feas-6")]
    bad = [c.name for c in feas if not c.satisfied_by(assignment)]
    if bad:
        raise MalformedAssignment(f"assignment violates {len(bad)} feasibility rows, e.g. {bad[0]}")
    rounds: list[dict[str, Slot]] = [{}, {}, {}]
    for j in range(3):
        fights: dict[int, list[tuple[int, int]]] = {}
        for i in range(n):
            cells = [(k, q) for k in range(s) for q in range(3) if assignment[model.x(i, j, k, q)]]
            if len(cells) != 1:
                raise MalformedAssignment(f"team {i + 1} has {len(cells)} cells in round {j + 1}")
            k, q = cells[0]
            fights.setdefault(k, []).append((i, q))
        for k, members in fights.items():
            for stage, (i, q) in zip(STAGES, sorted(members)):
                rounds[j][inst.teams[i]] = Slot(inst.problem_at(i, q + 1), k + 1, stage)
    return Schedule(tuple(rounds))


def _solve_seed(args):
    model, time_limit, seed = args
    return seed, solve(model, time_limit=time_limit, seed=seed)


def solve_portfolio(model: ConstraintModel, time_limit: float, seeds) -> SolveOutcome:
    """Run one search per seed in separate processes; the first conclusive answer wins."""
    import multiprocessing as mp

    seeds = list(seeds)
    last = None
    with mp.get_context("fork").Pool(len(seeds)) as pool:
        for seed, outcome in pool.imap_unordered(_solve_seed, [(model, time_limit, s) for s in seeds]):
            log.info("seed %d finished: %s", seed, outcome.status)
            last = outcome
            if outcome.status != TIMEOUT:
                pool.terminate()
                return outcome
    return last
