"""Solve the bundled 2018 Bratislava instance at every fairness level.

Prints one row per level: model size, solver status, nodes and wall time,
plus the audits of the two bundled schedules.

    python3 scripts/ba2018_levels.py --time-limit 300
"""
import argparse

from fight_scheduler import FairnessCriteria, validate
from fight_scheduler.fixtures import ba2018, ba2018_schedule
from fight_scheduler.solver import SATISFIABLE, build_model, solve


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--time-limit", type=float, default=300.0)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--symmetry-breaking", action="store_true")
    args = ap.parse_args()

    inst = ba2018()
    print(f"teams={inst.n} rooms={list(inst.room_plan)}")
    print(f"{'level':<8} {'vars':>6} {'rows':>6} {'status':<12} {'nodes':>8} {'seconds':>8}")
    for level in ("none", "weak", "fair", "strong"):
        crit = FairnessCriteria(non_cooperative=True, fairness=level)
        model = build_model(inst, crit, symmetry_breaking=args.symmetry_breaking)
        out = solve(model, time_limit=args.time_limit, seed=args.seed)
        if out.status == SATISFIABLE:
            assert validate(inst, out.schedule, crit).passed
        print(f"{level:<8} {model.num_vars:>6} {len(model.constraints):>6} {out.status:<12} "
              f"{out.stats.nodes:>8} {out.stats.wall_time:>8.2f}")

    for name in ("used", "fair"):
        rep = validate(inst, ba2018_schedule(name))
        verdicts = " ".join(f"{c}={'yes' if rep.holds(c) else 'no'}" for c in rep.verdicts)
        print(f"{name}: {verdicts}")


if __name__ == "__main__":
    main()
