"""Simple schedules: room composition fixed across all three rounds.

Inside a room holding team set S, picking which problem each team presents
in which round is a proper 3-edge-coloring of the team/problem graph G(S),
which exists exactly when no problem is held by four teams of S.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .graphs import BipartiteGraph, konig_edge_coloring
from .model import STAGES, Instance, Schedule, Slot


def portfolio_graph(instance: Instance, teams: Sequence[str] | None = None) -> BipartiteGraph:
    teams = list(instance.teams if teams is None else teams)
    if not teams:
        raise ValueError("team subset must be nonempty")
    edges = [(t, p) for t in teams for p in instance.portfolio(t)]
    return BipartiteGraph.from_edges(edges, left=teams)


def _avoiders(instance: Instance, teams: Sequence[str], problem: int) -> list[str]:
    return [t for t in teams if problem not in instance.portfolio(t)]


def find_fine_quadruple(instance: Instance, teams: Sequence[str] | None = None) -> tuple[str, ...] | None:
    """Four teams whose portfolios put no problem in all four, or None.

    Such a set exists iff every problem is avoided by some team; the
    construction starts from the first team and adds teams that avoid the
    problems already shared.
    """
    teams = list(instance.teams if teams is None else teams)
    if len(teams) < 4:
        return None
    held_by_all = set(instance.portfolio(teams[0]))
    for t in teams[1:]:
        held_by_all &= set(instance.portfolio(t))
    if held_by_all:
        return None

    t1 = teams[0]
    p1 = instance.portfolio(t1)[0]
    t2 = _avoiders(instance, teams, p1)[0]
    chosen = [t1, t2]
    common = [p for p in instance.portfolio(t1) if p in instance.portfolio(t2)]
    for c in common:
        # a team avoiding c keeps c below degree 4; skip if already avoided
        if any(c not in instance.portfolio(t) for t in chosen[2:]):
            continue
        chosen.append(next(t for t in _avoiders(instance, teams, c) if t not in chosen))
    for t in teams:
        if len(chosen) == 4:
            break
        if t not in chosen:
            chosen.append(t)
    quad = tuple(chosen)
    assert portfolio_graph(instance, quad).max_degree() == 3, quad
    return quad


@dataclass(frozen=True)
class SpecialWitness:
    triple: tuple[int, int, int]
    exceptions: tuple[str, str, str]


def is_special_profile(instance: Instance) -> tuple[bool, SpecialWitness | None]:
    """Detect n-3 identical portfolios {i,j,k} plus one exception per problem of the triple."""
    n = instance.n
    if n < 8:
        return False, None
    counts = Counter(frozenset(f) for f in instance.portfolios)
    triple, count = counts.most_common(1)[0]
    if count != n - 3:
        return False, None
    others = [t for t, f in zip(instance.teams, instance.portfolios) if frozenset(f) != triple]
    hit = []
    for t in others:
        inter = triple & set(instance.portfolio(t))
        if len(inter) != 1:
            return False, None
        hit.append(next(iter(inter)))
    if set(hit) != set(triple):
        return False, None
    order = sorted(triple)
    exceptions = tuple(others[hit.index(p)] for p in order)
    return True, SpecialWitness(tuple(order), exceptions)


@dataclass(frozen=True)
class SimpleOutcome:
    schedule: Schedule | None
    reason: str | None = None  # avoidance, special-profile, search-exhausted, unsupported-room-plan


def _room_groups(instance: Instance) -> list[tuple[str, ...]] | SimpleOutcome:
    plan = instance.room_plan
    fours = [k for k, size in enumerate(plan) if size == 4]
    teams = list(instance.teams)
    quads: list[tuple[str, ...]] = []
    if len(fours) == 1:
        quad = find_fine_quadruple(instance)
        if quad is None:
            return SimpleOutcome(None, "avoidance")
        quads = [quad]
    elif len(fours) == 2:
        for first in itertools.combinations(teams, 4):
            if portfolio_graph(instance, first).max_degree() > 3:
                continue
            rest = [t for t in teams if t not in first]
            second = find_fine_quadruple(instance, rest)
            if second is not None:
                quads = [first, second]
                break
        else:
            if any(len(_avoiders(instance, teams, p)) < 2 for p in instance.problems):
                return SimpleOutcome(None, "avoidance")
            if is_special_profile(instance)[0]:
                return SimpleOutcome(None, "special-profile")
            return SimpleOutcome(None, "search-exhausted")
    elif len(fours) > 2:
        return SimpleOutcome(None, "unsupported-room-plan")

    used = {t for q in quads for t in q}
    rest = [t for t in teams if t not in used]
    groups: list[tuple[str, ...]] = []
    quad_iter, triple_start = iter(quads), 0
    for size in plan:
        if size == 4:
            groups.append(next(quad_iter))
        else:
            groups.append(tuple(rest[triple_start:triple_start + 3]))
            triple_start += 3
    return groups


def simple_schedule(instance: Instance) -> SimpleOutcome:
    groups = _room_groups(instance)
    if isinstance(groups, SimpleOutcome):
        return groups
    rounds: list[dict[str, Slot]] = [{}, {}, {}]
    for room, group in enumerate(groups, start=1):
        graph = portfolio_graph(instance, group)
        assert graph.max_degree() == 3
        coloring = konig_edge_coloring(graph)
        for (team, problem), color in coloring.items():
            rounds[color][team] = Slot(problem, room, STAGES[group.index(team)])
    return SimpleOutcome(Schedule(tuple(rounds)))
