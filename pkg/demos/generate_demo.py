#!/usr/bin/env python3
"""Generate a random instance and schedule it three ways.

Draws a 15-task instance (reproducible from the seed), prints its task
table, then builds schedules from three priority rules and from the
swarm search so the rule-of-thumb orderings can be compared with the
searched one.

    python3 demos/generate_demo.py
    python3 demos/generate_demo.py 99
"""

import sys

from uavsched.datagen import GenSpec, generate_instance
from uavsched.eat import build_schedule
from uavsched.pso import PsoConfig, run_pso
from uavsched.sequences import priority_orderings


def main(seed: int = 1):
    inst = generate_instance(GenSpec(n_tasks=15, seed=seed))
    print(f"generated {inst.name}")
    print()
    print(f"{'id':>3} {'type':<20} {'route':<8} {'proc':>5}  preds")
    for t in inst.tasks:
        route = (t.start_pos if t.start_pos == t.end_pos
                 else f"{t.start_pos}->{t.end_pos}")
        preds = ",".join(map(str, t.predecessors)) or "-"
        print(f"{t.id:>3} {t.type.value:<20} {route:<8} "
              f"{t.proc_time:>5}  {preds}")
    print()

    rules = priority_orderings(inst)
    for name in ("proc-time-desc", "positional-weight-desc",
                 "direct-followers-desc"):
        makespan = build_schedule(inst, rules[name]).makespan()
        print(f"{name:<28} makespan {makespan}")

    report = run_pso(inst, PsoConfig(rng_seed=seed))
    print(f"{'swarm search':<28} makespan {report.best_makespan} "
          f"({report.iterations_run} iterations)")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 1)
