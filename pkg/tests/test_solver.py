import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from fight_scheduler import FairnessCriteria, room_plan_for, validate
from fight_scheduler.solver import INFEASIBLE, SATISFIABLE, TIMEOUT, MalformedAssignment, build_model, decode, solve

from conftest import make_instance, near_disjoint
from oracles import fair7_count, schedule_exists

LEVELS = ("none", "weak", "fair", "strong")


def test_ba2018_fair_noncoop(ba):
    crit = FairnessCriteria(non_cooperative=True, fairness="fair")
    out = solve(build_model(ba, crit), time_limit=60)
    assert out.status == SATISFIABLE
    assert validate(ba, out.schedule, crit).passed


def test_variable_and_row_counts(ba):
    model = build_model(ba, FairnessCriteria(non_cooperative=True, fairness="fair"))
    assert model.num_vars == 468
    counts = model.count_by_tag()
    # frozen from the combinatorial oracle and a direct count of T(l)
    assert counts["fair-7"] == fair7_count(ba.portfolios, 4, 3) == 1104
    assert counts == {"feas-2": 39, "feas-3": 39, "feas-4": 12, "feas-6": 180, "fair-7": 1104, "noncoop-10": 48}
    weak = build_model(ba, FairnessCriteria(fairness="weak")).count_by_tag()
    assert weak["fair-7"] == fair7_count(ba.portfolios, 4, 2)
    assert "noncoop-10" not in weak


def test_strong_model_shape(ba):
    model = build_model(ba, FairnessCriteria(fairness="strong"))
    assert model.num_x == 468
    assert model.num_vars == 468 + 3 * 13 * 4 * 17
    counts = model.count_by_tag()
    assert counts["sfair-8"] == 13 * 3 * 4 * 17 and counts["sfair-9"] == 13 * 17
    # own-presentation coefficient folds into -2
    row = next(c for c in model.constraints if c.tag == "sfair-8" and c.index == (1, 1, 1, 4))
    assert dict(row.terms)[model.x(0, 0, 0, 0)] == -2


@pytest.mark.parametrize("rooms,count", [([3, 3, 3, 3, 3], 675), ([4, 4, 4, 3], 540)])
def test_fifteen_team_counts(rooms, count):
    rng = random.Random(15)
    inst = make_instance([rng.sample(range(1, 18), 3) for _ in range(15)], rooms)
    assert build_model(inst, FairnessCriteria(fairness="weak")).num_x == count
    assert room_plan_for(15, "international") == [3] * 5
    assert room_plan_for(15, "min_rooms") == [4, 4, 4, 3]


def test_identical_portfolios_infeasible():
    inst = make_instance([(1, 2, 3)] * 4, [4])
    assert solve(build_model(inst, FairnessCriteria(fairness="fair"))).status == INFEASIBLE
    assert solve(build_model(inst, FairnessCriteria())).status == INFEASIBLE


def test_three_disjoint_teams_strong():
    inst = make_instance([(1, 2, 3), (4, 5, 6), (7, 8, 9)], [3])
    out = solve(build_model(inst, FairnessCriteria(fairness="strong")))
    assert out.status == SATISFIABLE
    assert validate(inst, out.schedule, FairnessCriteria(fairness="strong")).passed


def _small_instance(rng, level="none"):
    n = rng.choice([3, 4, 6])
    if level == "none":
        m = rng.choice([4, 5, 6, 7, 9])
        folios = [sorted(rng.sample(range(1, m + 1), 3)) for _ in range(n)]
    else:
        folios, m = near_disjoint(rng, n)
    schools = [rng.choice("abc") for _ in range(n)]
    return folios, schools, room_plan_for(n), m


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.sampled_from(LEVELS), st.booleans())
def test_solver_matches_brute_force(seed, level, non_coop):
    folios, schools, rooms, m = _small_instance(random.Random(seed), level)
    inst = make_instance(folios, rooms, schools=schools, num_problems=max(m, 17))
    crit = FairnessCriteria(non_cooperative=non_coop, fairness=level)
    out = solve(build_model(inst, crit), time_limit=60)
    assert out.status != TIMEOUT
    expected = schedule_exists(folios, rooms, level, schools if non_coop else None)
    assert (out.status == SATISFIABLE) == expected
    if expected:
        assert validate(inst, out.schedule, crit).passed


def test_symmetry_breaking_preserves_status():
    rng = random.Random(7)
    for _ in range(15):
        folios, schools, rooms, _ = _small_instance(rng)
        inst = make_instance(folios, rooms, schools=schools)
        for level in ("none", "fair"):
            crit = FairnessCriteria(fairness=level)
            a = solve(build_model(inst, crit)).status
            b = solve(build_model(inst, crit, symmetry_breaking=True)).status
            assert a == b


def test_deterministic(ba):
    crit = FairnessCriteria(non_cooperative=True, fairness="fair")
    model = build_model(ba, crit)
    a, b = solve(model, seed=3), solve(model, seed=3)
    assert a.assignment == b.assignment
    assert a.stats.nodes == b.stats.nodes


def test_seed_changes_search_not_answer(ba):
    model = build_model(ba, FairnessCriteria(non_cooperative=True, fairness="weak"))
    for seed in (0, 1, 2):
        out = solve(model, seed=seed, time_limit=60)
        assert out.status == SATISFIABLE
        assert validate(ba, out.schedule, model.criteria).passed


def test_timeout_reported(ba):
    out = solve(build_model(ba, FairnessCriteria(non_cooperative=True, fairness="strong")), time_limit=0.2)
    assert out.status in (TIMEOUT, SATISFIABLE)
    assert out.stats.wall_time < 5


def test_decode_cyclic_toy():
    # three teams on a 3-cycle of problems: round j, team i presents position (i + j) mod 3
    inst = make_instance([(1, 2, 3), (2, 3, 1), (3, 1, 2)], [3])
    model = build_model(inst, FairnessCriteria())
    values = [0] * model.num_vars
    for i in range(3):
        for j in range(3):
            values[model.x(i, j, 0, j)] = 1
    sched = decode(model, values)
    assert [sched.slot(1, t).problem for t in inst.teams] == [1, 2, 3]
    assert [sched.slot(1, t).stage for t in inst.teams] == ["A", "B", "C"]
    assert validate(inst, sched).holds("feasible")


def test_decode_rejects_bad_assignments():
    inst = make_instance([(1, 2, 3), (4, 5, 6), (7, 8, 9)], [3])
    model = build_model(inst, FairnessCriteria())
    with pytest.raises(MalformedAssignment):
        decode(model, [0] * model.num_vars)
    with pytest.raises(MalformedAssignment):
        decode(model, [1] * model.num_vars)


def test_model_rows_satisfied_by_solution(ba):
    crit = FairnessCriteria(non_cooperative=True, fairness="fair")
    model = build_model(ba, crit, symmetry_breaking=True)
    out = solve(model, time_limit=60)
    assert out.status == SATISFIABLE
    assert all(c.satisfied_by(out.assignment) for c in model.constraints)


def test_trivial_model():
    inst = make_instance([(1, 2, 3), (4, 5, 6), (7, 8, 9)], [3])
    model = build_model(inst, FairnessCriteria())
    assert model.num_vars == 27
    assert set(model.count_by_tag()) == {"feas-2", "feas-3", "feas-4", "feas-6"}
    assert solve(model).status == SATISFIABLE


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_fair_implies_weak(seed):
    rng = random.Random(seed)
    n = rng.choice([6, 7, 9])
    inst = make_instance([rng.sample(range(1, 13), 3) for _ in range(n)], room_plan_for(n), num_problems=12)
    fair = solve(build_model(inst, FairnessCriteria(fairness="fair")), time_limit=30)
    weak = solve(build_model(inst, FairnessCriteria(fairness="weak")), time_limit=30)
    if fair.status == SATISFIABLE:
        assert weak.status == SATISFIABLE
    if weak.status == INFEASIBLE:
        assert fair.status == INFEASIBLE
