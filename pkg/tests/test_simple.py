import itertools
import random

from hypothesis import given, strategies as st

from fight_scheduler import find_fine_quadruple, room_plan_for, is_special_profile, simple_schedule, validate
from fight_scheduler.simple import portfolio_graph

from conftest import make_instance
from oracles import fixed_room_schedule_exists


def _fine(inst, quad):
    return not set.intersection(*(set(inst.portfolio(t)) for t in quad))


def test_portfolio_graph(ba):
    g = portfolio_graph(ba)
    assert g.degree(4) == 6
    assert g.degree(16) == 2
    assert all(g.degree(t) == 3 for t in ba.teams)
    assert g.max_degree() == 6


def test_ba2018_fine_quadruple_exhaustive(ba):
    quad = find_fine_quadruple(ba)
    assert quad is not None and len(set(quad)) == 4
    assert portfolio_graph(ba, quad).max_degree() == 3
    fine = [q for q in itertools.combinations(ba.teams, 4) if _fine(ba, q)]
    # frozen; inclusion-exclusion over shared problems gives the same count
    assert len(fine) == 697


portfolios = st.lists(st.sets(st.integers(1, 5), min_size=3, max_size=3).map(sorted), min_size=4, max_size=9)


@given(portfolios)
def test_fine_quadruple_iff_avoidance(folios):
    n = len(folios)
    if n == 5:
        return
    inst = make_instance(folios, room_plan_for(n, "min_rooms"), num_problems=5)
    avoided = all(any(p not in f for f in folios) for p in range(1, 6))
    brute = any(_fine(inst, q) for q in itertools.combinations(inst.teams, 4))
    quad = find_fine_quadruple(inst)
    assert brute == avoided == (quad is not None)
    if quad:
        assert _fine(inst, quad)


def test_special_profile(special8):
    special, witness = is_special_profile(special8)
    assert special
    assert witness.triple == (1, 2, 3)
    assert special8.room_plan == (4, 4)
    out = simple_schedule(special8)
    assert out.schedule is None and out.reason == "special-profile"


def test_not_special():
    inst = make_instance([(1, 2, 3)] * 5 + [(1, 4, 5), (2, 6, 7), (4, 8, 9)], [4, 4])
    assert not is_special_profile(inst)[0]
    assert not is_special_profile(make_instance([(1, 2, 3)] * 4, [4]))[0]


def test_simple_ba2018(ba):
    out = simple_schedule(ba)
    assert out.schedule is not None
    rep = validate(ba, out.schedule)
    assert rep.holds("feasible")
    for t in ba.teams:
        assert len({out.schedule.slot(j, t).room for j in (1, 2, 3)}) == 1


def test_simple_refuses_three_four_rooms():
    inst = make_instance([(i, i + 1, i + 2) for i in range(1, 13)], [4, 4, 4])
    assert simple_schedule(inst).reason == "unsupported-room-plan"


def test_simple_zero_four_rooms():
    inst = make_instance([(1, 2, 3)] * 6, [3, 3])
    out = simple_schedule(inst)
    assert validate(inst, out.schedule).holds("feasible")


@given(st.integers(0, 10**6))
def test_simple_n7_matches_brute_force(seed):
    rng = random.Random(seed)
    m = rng.choice([3, 4, 5])
    folios = [sorted(rng.sample(range(1, m + 1), 3)) for _ in range(7)]
    inst = make_instance(folios, [4, 3], num_problems=m)
    out = simple_schedule(inst)
    assert (out.schedule is not None) == fixed_room_schedule_exists(folios, [4, 3])
    if out.schedule is not None:
        assert validate(inst, out.schedule).holds("feasible")


@given(st.integers(0, 10**6))
def test_simple_two_four_rooms(seed):
    rng = random.Random(seed)
    m = rng.choice([4, 5, 6])
    n = rng.choice([8, 11])
    folios = [sorted(rng.sample(range(1, m + 1), 3)) for _ in range(n)]
    rooms = [4, 4] + [3] * ((n - 8) // 3)
    inst = make_instance(folios, rooms, num_problems=m)
    out = simple_schedule(inst)
    if n == 8:
        assert (out.schedule is not None) == fixed_room_schedule_exists(folios, rooms)
    if out.schedule is not None:
        assert validate(inst, out.schedule).holds("feasible")
    else:
        assert out.reason in ("avoidance", "special-profile", "search-exhausted")


def test_small_graphs(ba):
    g = portfolio_graph(ba, ["Sharks2", "Eagles"])
    assert g.degree(16) == 2
    star = portfolio_graph(ba, ["Lions"])
    assert len(star.edges) == 3 and all(star.degree(p) == 1 for p in star.right)


def test_ba2018_not_special(ba):
    assert not is_special_profile(ba)[0]
    disjoint = make_instance([(3 * i + 1, 3 * i + 2, 3 * i + 3) for i in range(5)] + [(16, 17, 1)] * 3, [4, 4],
                             num_problems=17)
    assert not is_special_profile(disjoint)[0]


def test_identical_four_have_no_fine_quadruple():
    assert find_fine_quadruple(make_instance([(1, 2, 3)] * 4, [4])) is None


def test_disjoint_six():
    inst = make_instance([(3 * i + 1, 3 * i + 2, 3 * i + 3) for i in range(6)], [3, 3], num_problems=18)
    out = simple_schedule(inst)
    assert validate(inst, out.schedule).holds("feasible")


def test_common_problem_seven_teams():
    rng = random.Random(3)
    folios = [[1] + rng.sample(range(2, 18), 2) for _ in range(7)]
    assert simple_schedule(make_instance(folios, [4, 3])).reason == "avoidance"


@given(st.integers(0, 10**6))
def test_two_four_rooms_condition(seed):
    # succeeds iff every problem is avoided by two teams and the profile is not special
    rng = random.Random(seed)
    n = rng.choice([8, 11])
    m = rng.choice([4, 5, 6])
    folios = [sorted(rng.sample(range(1, m + 1), 3)) for _ in range(n)]
    if rng.random() < 0.2:
        folios = [[1, 2, 3]] * (n - 3) + [[1, 4, 5], [2, 4, 6], [3, 5, 6]]
        m = 6
    inst = make_instance(folios, [4, 4] + [3] * ((n - 8) // 3), num_problems=m)
    avoid2 = all(sum(p not in f for f in folios) >= 2 for p in range(1, m + 1))
    expected = avoid2 and not is_special_profile(inst)[0]
    assert (simple_schedule(inst).schedule is not None) == expected
