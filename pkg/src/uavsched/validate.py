"""Structural checks for finished schedules.

The validator re-derives every constraint from the instance instead of
trusting the constructor: timeline continuity, flight durations against
the matrix, task execution windows, precedence, position exclusivity,
airborne battery budgets and recharge bay capacity. It returns an empty
list exactly when the schedule is clean. Schedules covering only a
subset of the task set are acceptable as long as every scheduled task's
predecessors are scheduled too.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import ActionKind, AIRBORNE_KINDS, Schedule


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    uav_id: str | None = None
    task_id: int | None = None
    position: str | None = None
    tstp: int | None = None

    def __str__(self):
        return f"[{self.kind}] {self.message}"


def validate_schedule(schedule: Schedule) -> list[Violation]:
    inst = schedule.instance
    out: list[Violation] = []
    add = out.append
    station_pos = inst.station_positions()
    fm = inst.trajectory_map

    for uav_id, acts in schedule.actions.items():
        if uav_id not in inst.uavs_by_id:
            add(Violation("unknown_uav", f"actions for unknown uav {uav_id!r}",
                          uav_id=uav_id))
            continue
        uav = inst.uav(uav_id)
        prev = None
        for a in acts:
            if a.end < a.start:
                add(Violation("negative_span",
                              f"{uav_id}: {a.kind.value} ends at {a.end} "
                              f"before start {a.start}",
                              uav_id=uav_id, tstp=a.start))
            if a.kind == ActionKind.FLIGHT:
                expect = fm.flight_time(a.from_pos, a.to_pos)
                if a.end - a.start != expect:
                    add(Violation("flight_duration",
                                  f"{uav_id}: flight {a.from_pos}->{a.to_pos} "
                                  f"lasts {a.end - a.start}, matrix says {expect}",
                                  uav_id=uav_id, tstp=a.start))
            elif a.kind != ActionKind.TASK_EXEC:
                # Only flights and task executions (material handling)
                # may change position.
                if a.from_pos != a.to_pos:
                    add(Violation("action_shape",
                                  f"{uav_id}: {a.kind.value} moves from "
                                  f"{a.from_pos} to {a.to_pos}",
                                  uav_id=uav_id, tstp=a.start))
            if a.kind == ActionKind.RECHARGE:
                if a.from_pos not in station_pos:
                    add(Violation("recharge_position",
                                  f"{uav_id}: recharge at non-station "
                                  f"{a.from_pos!r}",
                                  uav_id=uav_id, position=a.from_pos))
                if a.end - a.start != uav.recharge_duration:
                    add(Violation("recharge_duration",
                                  f"{uav_id}: recharge lasts {a.end - a.start}, "
                                  f"expected {uav.recharge_duration}",
                                  uav_id=uav_id, tstp=a.start))
            if (a.kind == ActionKind.WAIT_ON_GROUND
                    and a.from_pos not in station_pos):
                add(Violation("ground_wait_position",
                              f"{uav_id}: wait on ground away from a station "
                              f"at {a.from_pos!r}",
                              uav_id=uav_id, position=a.from_pos))
            if prev is not None:
                if a.start != prev.end:
                    kind = ("timeline_gap" if a.start > prev.end
                            else "timeline_overlap")
                    add(Violation(kind,
                                  f"{uav_id}: {prev.kind.value} ends {prev.end} "
                                  f"but {a.kind.value} starts {a.start}",
                                  uav_id=uav_id, tstp=a.start))
                if a.from_pos != prev.to_pos:
                    add(Violation("spatial_continuity",
                                  f"{uav_id}: jumps from {prev.to_pos!r} to "
                                  f"{a.from_pos!r} at {a.start}",
                                  uav_id=uav_id, tstp=a.start))
            elif a.from_pos != uav.initial_pos:
                add(Violation("spatial_continuity",
                              f"{uav_id}: first action starts at {a.from_pos!r}, "
                              f"uav is placed at {uav.initial_pos!r}",
                              uav_id=uav_id, tstp=a.start))
            prev = a

    out.extend(_check_tasks(schedule))
    out.extend(_check_battery(schedule))
    out.extend(_check_bays(schedule))
    return out


def _check_tasks(schedule: Schedule) -> list[Violation]:
    inst = schedule.instance
    out: list[Violation] = []
    seen: dict[int, tuple[str, object]] = {}
    by_position: dict[str, list[tuple[int, int, int]]] = {}
    for uav_id, a in schedule.all_actions():
        if a.kind != ActionKind.TASK_EXEC:
            continue
        tid = a.task_id
        if tid is None or tid not in inst.tasks_by_id:
            out.append(Violation("unknown_task",
                                 f"{uav_id}: execution of unknown task {tid}",
                                 uav_id=uav_id, task_id=tid, tstp=a.start))
            continue
        if tid in seen:
            out.append(Violation("duplicate_task",
                                 f"task {tid} executed more than once",
                                 uav_id=uav_id, task_id=tid, tstp=a.start))
            continue
        seen[tid] = (uav_id, a)
        task = inst.task(tid)
        if a.end - a.start != task.proc_time:
            out.append(Violation("task_duration",
                                 f"task {tid} ran {a.end - a.start}s, "
                                 f"needs {task.proc_time}s",
                                 uav_id=uav_id, task_id=tid, tstp=a.start))
        if (a.from_pos, a.to_pos) != (task.start_pos, task.end_pos):
            out.append(Violation("task_position",
                                 f"task {tid} ran {a.from_pos}->{a.to_pos}, "
                                 f"defined {task.start_pos}->{task.end_pos}",
                                 uav_id=uav_id, task_id=tid, tstp=a.start))
        for pos in {task.start_pos, task.end_pos}:
            by_position.setdefault(pos, []).append((a.start, a.end, tid))
    for tid, (uav_id, a) in seen.items():
        for p in inst.task(tid).predecessors:
            if p not in seen:
                out.append(Violation("precedence",
                                     f"task {tid} scheduled without its "
                                     f"predecessor {p}",
                                     uav_id=uav_id, task_id=tid, tstp=a.start))
            elif seen[p][1].end > a.start:
                out.append(Violation("precedence",
                                     f"task {tid} starts at {a.start} before "
                                     f"predecessor {p} ends at {seen[p][1].end}",
                                     uav_id=uav_id, task_id=tid, tstp=a.start))
    for pos, spans in by_position.items():
        spans.sort()
        for (s1, e1, t1), (s2, e2, t2) in zip(spans, spans[1:]):
            if t1 != t2 and s2 < e1:
                out.append(Violation("position_exclusivity",
                                     f"tasks {t1} and {t2} overlap at "
                                     f"position {pos!r} ({s2} < {e1})",
                                     task_id=t2, position=pos, tstp=s2))
    return out


def _check_battery(schedule: Schedule) -> list[Violation]:
    """Every maximal airborne stretch must fit the battery capacity."""
    inst = schedule.instance
    out: list[Violation] = []
    for uav_id in schedule.uav_order():
        uav = inst.uavs_by_id.get(uav_id)
        if uav is None:
            continue  # reported as unknown_uav already
        cap = uav.battery_capacity
        airborne = 0
        span_start = None
        for a in schedule.actions[uav_id]:
            if a.kind in AIRBORNE_KINDS:
                if span_start is None:
                    span_start = a.start
                airborne += a.end - a.start
            else:
                if airborne > cap:
                    out.append(Violation(
                        "battery",
                        f"{uav_id} airborne {airborne}s from {span_start}, "
                        f"capacity {cap}",
                        uav_id=uav_id, tstp=span_start))
                airborne = 0
                span_start = None
        if airborne > cap:
            out.append(Violation(
                "battery",
                f"{uav_id} airborne {airborne}s from {span_start}, "
                f"capacity {cap}",
                uav_id=uav_id, tstp=span_start))
    return out


def _check_bays(schedule: Schedule) -> list[Violation]:
    """Concurrent recharges at a station never exceed its bay count."""
    inst = schedule.instance
    out: list[Violation] = []
    slots = {s.pos: s.slots for s in inst.stations}
    per_station: dict[str, list[tuple[int, int]]] = {}
    for uav_id, a in schedule.all_actions():
        if a.kind == ActionKind.RECHARGE:
            per_station.setdefault(a.from_pos, []).append((a.start, a.end))
    for pos, spans in per_station.items():
        limit = slots.get(pos)
        if limit is None:
            continue  # already reported as recharge_position
        events = sorted([(s, 1) for s, _ in spans] + [(e, -1) for _, e in spans],
                        key=lambda ev: (ev[0], ev[1]))
        level = 0
        for tstp, delta in events:
            level += delta
            if level > limit:
                out.append(Violation("bay_capacity",
                                     f"{level} concurrent recharges at {pos!r} "
                                     f"(limit {limit}) at {tstp}",
                                     position=pos, tstp=tstp))
                break
    return out
