import json
import random

import pytest
from hypothesis import given, strategies as st

from fight_scheduler import FormatError, Instance, RoomPlanError, parse_instance, parse_schedule, render_instance, render_schedule, room_plan_for
from fight_scheduler.model import FairnessCriteria, instance_to_json, schedule_to_json

from conftest import make_instance, random_feasible


def test_ba2018_portfolios(ba):
    assert ba.n == 13
    assert ba.room_plan == (3, 3, 3, 4)
    assert set(ba.portfolio("Sharks1")) == {4, 6, 14}
    assert set(ba.portfolio("Lions")) == {4, 9, 10}
    assert len(ba.school_groups()) == 7


def test_minimal_instance():
    text = "teams=3 problems=17 rooms=3\na x 1 2 3\nb y 4 5 6\nc z 7 8 9\n"
    inst = parse_instance(text)
    assert inst.portfolios == ((1, 2, 3), (4, 5, 6), (7, 8, 9))


def test_positions_keep_file_order():
    inst = parse_instance("teams=3 problems=17 rooms=3\na x 9 2 5\nb y 4 5 6\nc z 7 8 1\n")
    assert [inst.problem_at(0, q) for q in (1, 2, 3)] == [9, 2, 5]


@pytest.mark.parametrize("line,msg", [
    ("c z 13 13 17", "duplicate"),
    ("c z 13 17", "portfolio size"),
    ("c z 1 2 3 4", "portfolio size"),
    ("c z 1 2 18", "unknown problem"),
])
def test_bad_portfolios(line, msg):
    text = f"teams=3 problems=17 rooms=3\na x 1 2 3\nb y 4 5 6\n{line}\n"
    with pytest.raises(FormatError, match=msg):
        parse_instance(text)


def test_room_sum_mismatch():
    with pytest.raises(FormatError, match="seats"):
        parse_instance("teams=3 problems=17 rooms=4\na x 1 2 3\nb y 4 5 6\nc z 7 8 9\n")


def test_bad_room_size_and_small_n():
    with pytest.raises(FormatError):
        make_instance([(1, 2, 3)] * 5, [5])
    with pytest.raises(FormatError):
        make_instance([(1, 2, 3)] * 2, [2])


def test_derived_accessors(ba):
    # T(16) = holders of problem 16 as (team index, position)
    assert ba.holders(16) == [(1, 2), (10, 3)]
    for i in range(ba.n):
        for p in ba.problems:
            assert ba.has(i, p) == (p in ba.portfolios[i])
            assert ba.has(i, p) == any(h == i for h, _ in ba.holders(p))


@pytest.mark.parametrize("n,policy,rooms", [
    (13, "international", [4, 3, 3, 3]),
    (15, "min_rooms", [4, 4, 4, 3]),
    (15, "min-rooms", [4, 4, 4, 3]),
    (12, "international", [3, 3, 3, 3]),
    (14, "international", [4, 4, 3, 3]),
    (4, "international", [4]),
    (8, "international", [4, 4]),
    (12, "min_rooms", [4, 4, 4]),
])
def test_room_plan_for(n, policy, rooms):
    assert room_plan_for(n, policy) == rooms


@pytest.mark.parametrize("n,policy", [(5, "international"), (2, "international"), (5, "min_rooms"), (1, "min_rooms")])
def test_room_plan_errors(n, policy):
    with pytest.raises(RoomPlanError):
        room_plan_for(n, policy)


@given(st.integers(3, 60), st.sampled_from(["international", "min_rooms"]))
def test_room_plan_sums(n, policy):
    try:
        rooms = room_plan_for(n, policy)
    except RoomPlanError:
        assert n == 5
        return
    assert sum(rooms) == n and set(rooms) <= {3, 4}
    if policy == "international":
        assert rooms.count(4) == n % 3
    else:
        # no composition with more 4-rooms exists
        assert all((n - 4 * f) % 3 for f in range(rooms.count(4) + 1, n // 4 + 1))


def test_bad_stage_and_missing_round():
    with pytest.raises(FormatError, match="stage"):
        parse_schedule("1 1 E a 1\n2 1 A a 2\n3 1 A a 3\n")
    with pytest.raises(FormatError, match="round 3"):
        parse_schedule("1 1 A a 1\n2 1 A a 2\n")
    with pytest.raises(FormatError):
        parse_schedule("4 1 A a 1\n")


def test_fairness_criteria_levels():
    with pytest.raises(ValueError):
        FairnessCriteria(fairness="very")
    assert FairnessCriteria(True, True, "strong").requested() == ("feasible", "non_cooperative", "order_fair", "strongly_fair")


@given(st.integers(0, 10**6), st.integers(3, 20))
def test_round_trips(seed, n):
    if n == 5:
        n = 6
    inst, sched = random_feasible(random.Random(seed), n)
    assert parse_instance(render_instance(inst)) == inst
    assert parse_instance(json.dumps(instance_to_json(inst))) == inst
    assert parse_schedule(render_schedule(inst, sched)) == sched
    assert parse_schedule(render_schedule(inst, sched, "json")) == sched
    assert parse_schedule(json.dumps(schedule_to_json(sched))) == sched


def test_table_rendering(ba, fair2018):
    text = render_schedule(ba, fair2018, "table")
    assert text.count("Round ") == 3
    assert "Lions" in text
