#!/usr/bin/env python3
"""Step-by-step tour of the construction heuristic on the bundled instance.

Builds the schedule one task at a time from the sequence prefix
[3, 2, 1, 4, 6, 5, 7] and narrates what the dispatcher did: who flew
where, who had to hover because a position was still occupied, and who
had to detour through a recharge station. The full timeline and the
makespan are printed at the end.

Run it with no arguments:

    python3 demos/walkthrough.py
"""

from uavsched.eat import build_schedule
from uavsched.model import ActionKind
from uavsched.sampledata import sample_instance

PREFIX = [3, 2, 1, 4, 6, 5, 7]
COMPLETION = [3, 2, 1, 4, 6, 5, 7, 12, 8, 9, 10, 11]


def narrate(instance, sequence):
    schedule = build_schedule(instance, sequence)
    execs = schedule.task_executions()
    print(f"instance {instance.name}: {len(instance.tasks)} tasks, "
          f"{len(instance.uavs)} UAVs, battery "
          f"{instance.uavs[0].battery_capacity} s")
    print()
    for tid in sequence:
        uav_id, act = execs[tid]
        task = instance.tasks_by_id[tid]
        where = (task.start_pos if task.start_pos == task.end_pos
                 else f"{task.start_pos}->{task.end_pos}")
        print(f"task {tid:>2} -> {uav_id} at t={act.start:<5} ({where}, "
              f"{task.proc_time} s)")
        # anything unusual on the way there?
        for a in schedule.actions[uav_id]:
            if a.end > act.start:
                break
            if a.kind == ActionKind.HOVER and a.end == act.start:
                print(f"          hovered {a.start}..{a.end}: position "
                      f"{a.to_pos} was still busy")
            if a.kind == ActionKind.RECHARGE and a.end >= act.start - 120:
                print(f"          recharged at {a.to_pos} "
                      f"{a.start}..{a.end} before this task")
    print()
    print(f"makespan: {schedule.makespan()}")
    return schedule


def print_timeline(schedule):
    print()
    print("full timeline:")
    for uav_id in schedule.uav_order():
        print(f"  {uav_id}:")
        for a in schedule.actions[uav_id]:
            label = f"task {a.task_id}" if a.task_id else ""
            print(f"    {a.kind.value:<14} {a.start:>5}..{a.end:<5} "
                  f"{a.from_pos}->{a.to_pos} {label}")


if __name__ == "__main__":
    inst = sample_instance()
    sched = narrate(inst, PREFIX)
    print_timeline(sched)
    print()
    full = build_schedule(inst, COMPLETION)
    print(f"completing the sequence with the remaining five tasks "
          f"{COMPLETION[7:]} gives makespan {full.makespan()}")
