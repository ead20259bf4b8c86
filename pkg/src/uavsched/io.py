"""File formats: instance JSON, Table-style task CSV, schedule CSV.

All writers emit canonical bytes (sorted keys, fixed separators, LF
endings) so identical inputs produce identical files.
"""

from __future__ import annotations

import csv
import json
import os
from pathlib import Path

from .model import (
    Action,
    ActionKind,
    InstanceError,
    Position,
    PositionKind,
    ProblemInstance,
    RechargeStation,
    Schedule,
    Task,
    TaskType,
    TrajectoryMap,
    Uav,
)

TASK_CSV_FIELDS = ("TaskID", "Start", "End", "ProcTime", "Precedence")
SCHEDULE_CSV_FIELDS = ("uav", "action_kind", "start", "end", "from", "to",
                       "task_id")


def instance_to_dict(instance: ProblemInstance) -> dict:
    return {
        "name": instance.name,
        "positions": [{"id": p.id, "kind": p.kind.value}
                      for p in instance.trajectory_map.positions],
        "flight_time": [list(row) for row in instance.trajectory_map.seconds],
        "stations": [{"pos": s.pos, "slots": s.slots}
                     for s in instance.stations],
        "tasks": [{
            "id": t.id,
            "type": t.type.value,
            "start": t.start_pos,
            "end": t.end_pos,
            "proc_time": t.proc_time,
            "predecessors": list(t.predecessors),
        } for t in instance.tasks],
        "uavs": [{
            "id": u.id,
            "initial_pos": u.initial_pos,
            "battery_capacity": u.battery_capacity,
            "recharge_duration": u.recharge_duration,
        } for u in instance.uavs],
    }


def instance_from_dict(doc: dict) -> ProblemInstance:
    try:
        positions = [Position(p["id"], PositionKind(p.get("kind", "work")))
                     for p in doc["positions"]]
        fm = TrajectoryMap(positions, doc["flight_time"])
        stations = tuple(RechargeStation(s["pos"], int(s.get("slots", 1)))
                         for s in doc["stations"])
        tasks = tuple(Task(
            id=int(t["id"]),
            type=TaskType(t["type"]),
            start_pos=t["start"],
            end_pos=t["end"],
            proc_time=int(t["proc_time"]),
            predecessors=tuple(int(p) for p in t.get("predecessors", ())),
        ) for t in doc["tasks"])
        uavs = tuple(Uav(
            id=u["id"],
            initial_pos=u["initial_pos"],
            battery_capacity=int(u.get("battery_capacity", 1200)),
            recharge_duration=int(u.get("recharge_duration", 2700)),
        ) for u in doc["uavs"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"malformed instance document: {exc}") from exc
    return ProblemInstance(trajectory_map=fm, stations=stations, tasks=tasks,
                           uavs=uavs, name=doc.get("name", "instance"))


def _canonical_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_text_atomic(path, text: str):
    """Write via a sibling temp file and rename, so partial files never
    land under the final name."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def save_instance(instance: ProblemInstance, path):
    write_text_atomic(path, _canonical_json(instance_to_dict(instance)))


def load_instance(path) -> ProblemInstance:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceError(f"{path}: expected a JSON object")
    return instance_from_dict(doc)


def _infer_task_type(start: str, end: str, proc: int) -> TaskType:
    if start != end:
        return TaskType.MATERIAL_HANDLING
    return (TaskType.SINGLE_INSPECTION if proc <= 80
            else TaskType.COMPOUND_INSPECTION)


def read_task_csv(path) -> tuple[Task, ...]:
    """Import tasks from the tabular format: TaskID, Start, End,
    ProcTime, Precedence (semicolon-separated ids, '-' for none)."""
    tasks = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = set(TASK_CSV_FIELDS) - set(reader.fieldnames or ())
        if missing:
            raise InstanceError(
                f"{path}: task CSV is missing columns {sorted(missing)}")
        for row in reader:
            try:
                tid = int(row["TaskID"])
                start = row["Start"].strip()
                end = row["End"].strip()
                proc = int(row["ProcTime"])
                raw = (row["Precedence"] or "").strip()
                preds = (tuple(int(p) for p in raw.split(";") if p.strip())
                         if raw and raw != "-" else ())
            except (TypeError, ValueError) as exc:
                raise InstanceError(f"{path}: bad task row {row}: {exc}") from exc
            tasks.append(Task(tid, _infer_task_type(start, end, proc),
                              start, end, proc, preds))
    return tuple(tasks)


def write_task_csv(tasks, path):
    lines = [",".join(TASK_CSV_FIELDS)]
    for t in tasks:
        preds = ";".join(str(p) for p in t.predecessors) if t.predecessors else "-"
        lines.append(f"{t.id},{t.start_pos},{t.end_pos},{t.proc_time},{preds}")
    write_text_atomic(path, "\n".join(lines) + "\n")


def schedule_rows(schedule: Schedule):
    for uav_id, a in schedule.all_actions():
        yield (uav_id, a.kind.value, a.start, a.end, a.from_pos, a.to_pos,
               "" if a.task_id is None else a.task_id)


def write_schedule_csv(schedule: Schedule, path):
    lines = [",".join(SCHEDULE_CSV_FIELDS)]
    for row in schedule_rows(schedule):
        lines.append(",".join(str(v) for v in row))
    write_text_atomic(path, "\n".join(lines) + "\n")


def read_schedule_csv(path, instance: ProblemInstance) -> Schedule:
    actions: dict[str, list[Action]] = {u.id: [] for u in instance.uavs}
    station_pos = instance.station_positions()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = set(SCHEDULE_CSV_FIELDS) - set(reader.fieldnames or ())
        if missing:
            raise InstanceError(
                f"{path}: schedule CSV is missing columns {sorted(missing)}")
        for row in reader:
            try:
                kind = ActionKind(row["action_kind"])
                task_id = int(row["task_id"]) if row["task_id"] else None
                action = Action(
                    kind=kind,
                    start=int(row["start"]),
                    end=int(row["end"]),
                    from_pos=row["from"],
                    to_pos=row["to"],
                    task_id=task_id,
                    station=(row["from"]
                             if kind in (ActionKind.RECHARGE,
                                         ActionKind.WAIT_ON_GROUND)
                             and row["from"] in station_pos else None),
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise InstanceError(
                    f"{path}: bad schedule row {row}: {exc}") from exc
            actions.setdefault(row["uav"], []).append(action)
    for acts in actions.values():
        acts.sort(key=lambda a: (a.start, a.end))
    return Schedule(instance=instance, actions=actions)


def write_history_csv(history, path):
    lines = ["iteration,best,mean"]
    for it, best, mean in history:
        lines.append(f"{it},{best},{mean:.6f}")
    write_text_atomic(path, "\n".join(lines) + "\n")


def report_to_dict(report) -> dict:
    """JSON payload for a search run. Wall-clock time is deliberately
    left out so repeated seeded runs serialize byte-identically."""
    cfg = report.config
    return {
        "config": {
            "c1": cfg.c1,
            "c2": cfg.c2,
            "swarm_size": cfg.swarm_size,
            "max_iterations": cfg.max_iterations,
            "convergence_window": cfg.convergence_window,
            "rng_seed": cfg.rng_seed,
        },
        "best_makespan": report.best_makespan,
        "best_sequence": list(report.best_sequence),
        "iterations_run": report.iterations_run,
        "converged": report.converged,
        "convergence_iteration": report.convergence_iteration,
        "last_improvement": report.last_improvement,
        "history": [[it, best, round(mean, 6)]
                    for it, best, mean in report.history],
    }


def write_report_json(report, path):
    write_text_atomic(path, _canonical_json(report_to_dict(report)))
