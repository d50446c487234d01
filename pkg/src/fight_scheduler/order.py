"""Reassign presenter stages so every team gets three different positions."""
from __future__ import annotations

from .graphs import BipartiteGraph, konig_edge_coloring, max_matching
from .model import ROUNDS, Instance, Schedule


def fight_graph(instance: Instance, schedule: Schedule) -> BipartiteGraph:
    """Fights (round, room) on the left, teams on the right, one edge per attendance."""
    fights = [(j, k) for j in ROUNDS for k in range(1, len(instance.room_plan) + 1)]
    edges = [((j, schedule.slot(j, t).room), t) for j in ROUNDS for t in instance.teams]
    return BipartiteGraph.from_edges(edges, left=fights, right=instance.teams)


def assign_order_fair(instance: Instance, schedule: Schedule) -> Schedule:
    """Same problems and rooms, new stages A-D with no team repeating a stage.

    A matching covering every 4-team Fight picks the D presenters (Hall's
    condition holds since teams attend only three Fights).  The rest of the
    graph is then 3-regular on the Fight side and its 3-edge-coloring gives
    stages A, B, C.
    """
    graph = fight_graph(instance, schedule)
    big = {f for f in graph.left if graph.degree(f) == 4}
    stage_d = max_matching(graph, left_subset=big)
    if len(stage_d) != len(big):
        raise ValueError("no matching covers all 4-team Fights; schedule is not feasible")
    taken = set(stage_d.items())
    rest = BipartiteGraph.from_edges(
        [e for e in graph.edges if e not in taken], left=graph.left, right=graph.right
    )
    if rest.max_degree() > 3:
        raise ValueError("schedule is not feasible: a Fight holds more than four teams")
    coloring = konig_edge_coloring(rest)
    stages = {(f[0], t): "ABC"[c] for (f, t), c in coloring.items()}
    stages.update({(f[0], t): "D" for f, t in stage_d.items()})
    return schedule.with_stages(stages)
