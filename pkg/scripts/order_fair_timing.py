"""Time the stage reassignment on random feasible schedules of growing size."""
import argparse
import random
import statistics
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from conftest import random_feasible  # noqa: E402

from fight_scheduler import FairnessCriteria, assign_order_fair, validate  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-size", type=int, default=50)
    ap.add_argument("--max-teams", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"{'n':>4} {'median ms':>10} {'max ms':>8}")
    for n in [4, 6, 7, 10, 13, 16, 20, 30, 40, 60]:
        if n > args.max_teams:
            break
        times = []
        for _ in range(args.per_size):
            inst, sched = random_feasible(rng, n, num_problems=max(17, n))
            t0 = time.perf_counter()
            out = assign_order_fair(inst, sched)
            times.append(time.perf_counter() - t0)
            assert validate(inst, out, FairnessCriteria(order_fair=True)).passed
        print(f"{n:>4} {statistics.median(times) * 1000:>10.2f} {max(times) * 1000:>8.2f}")


if __name__ == "__main__":
    main()
