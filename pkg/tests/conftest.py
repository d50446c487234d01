import random

import pytest
from hypothesis import HealthCheck, settings

from fight_scheduler import Instance, Schedule, Slot
from fight_scheduler.fixtures import ba2018, ba2018_schedule, special_profile

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def ba():
    return ba2018()


@pytest.fixture(scope="session")
def used2018():
    return ba2018_schedule("used")


@pytest.fixture(scope="session")
def fair2018():
    return ba2018_schedule("fair")


@pytest.fixture(scope="session")
def special8():
    return special_profile()


def make_instance(portfolios, rooms, schools=None, num_problems=17):
    n = len(portfolios)
    teams = tuple(f"t{i + 1}" for i in range(n))
    schools = tuple(schools) if schools is not None else tuple(f"s{i + 1}" for i in range(n))
    return Instance(teams, schools, tuple(tuple(f) for f in portfolios), tuple(rooms), num_problems)


def random_rooms(rng, n):
    """A random {3,4} composition of n, shuffled."""
    fours = rng.choice([f for f in range(n // 4 + 1) if (n - 4 * f) % 3 == 0])
    rooms = [4] * fours + [3] * ((n - 4 * fours) // 3)
    rng.shuffle(rooms)
    return rooms


def random_feasible(rng, n, num_problems=17):
    """Random feasible schedule; portfolios are read off the presentations.

    Rooms are drawn freshly each round; each team presents a problem not yet
    used by itself or by its room that round.
    """
    rooms = random_rooms(rng, n)
    teams = [f"t{i + 1}" for i in range(n)]
    presented = {t: [] for t in teams}
    rounds = []
    for _ in range(3):
        order = teams[:]
        rng.shuffle(order)
        slots = {}
        pos = 0
        for k, size in enumerate(rooms, start=1):
            group = order[pos:pos + size]
            pos += size
            used = set()
            for stage, t in zip("ABCD", group):
                p = rng.choice([x for x in range(1, num_problems + 1) if x not in used and x not in presented[t]])
                used.add(p)
                presented[t].append(p)
                slots[t] = Slot(p, k, stage)
        rounds.append(slots)
    inst = Instance(tuple(teams), tuple(f"s{i}" for i in range(n)), tuple(tuple(presented[t]) for t in teams),
                    tuple(rooms), num_problems)
    return inst, Schedule(tuple(rounds))


def near_disjoint(rng, n):
    """Disjoint triples with up to two problems copied between teams."""
    m = 3 * n + rng.randint(0, 3)
    pool = rng.sample(range(1, m + 1), 3 * n)
    folios = [pool[3 * i:3 * i + 3] for i in range(n)]
    for _ in range(rng.choice([0, 0, 1, 1, 2])):
        a, b = rng.sample(range(n), 2)
        p = rng.choice(folios[b])
        if p not in folios[a]:
            folios[a][rng.randrange(3)] = p
    return [sorted(f) for f in folios], m


_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture(scope="session")
def acceptance():
    """Criterion number -> one-line PASS/FAIL summary, printed after the run."""
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for num in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[num])
