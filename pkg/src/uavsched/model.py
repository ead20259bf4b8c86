"""Domain model for battery-constrained task scheduling of indoor UAV fleets.

Positions live on a fixed trajectory network described by a symmetric
flight-time matrix. Tasks occupy their start and end positions for their
whole execution window, may depend on other tasks, and are flown by UAVs
that must return to a recharge station before their airborne time budget
runs out.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

DEFAULT_BATTERY_CAPACITY = 1200
DEFAULT_RECHARGE_DURATION = 2700


class SchedulingError(Exception):
    """Base class for errors raised by this package."""


class UnknownPositionError(SchedulingError):
    """A position id was looked up that the trajectory map does not know."""


class InstanceError(SchedulingError):
    """A problem instance violates its structural invariants."""


class SequenceError(SchedulingError):
    """A task sequence is malformed or precedence-infeasible."""


class PositionKind(str, enum.Enum):
    WORK = "work"
    RECHARGE = "recharge"


@dataclass(frozen=True)
class Position:
    id: str
    kind: PositionKind = PositionKind.WORK


class TrajectoryMap:
    """Complete flight-time lookup between named positions.

    The matrix is authoritative: entry [i][j] is the flight duration in
    seconds between positions i and j, already accounting for the network
    of allowed trajectories. It must be symmetric with a zero diagonal
    and positive off-diagonal entries.
    """

    def __init__(self, positions: list[Position] | tuple[Position, ...],
                 seconds: list[list[int]]):
        self.positions = tuple(positions)
        self.seconds = tuple(tuple(int(v) for v in row) for row in seconds)
        self.index = {p.id: i for i, p in enumerate(self.positions)}
        if len(self.index) != len(self.positions):
            raise InstanceError("duplicate position ids in trajectory map")
        self._check_matrix()

    def _check_matrix(self):
        n = len(self.positions)
        m = np.array(self.seconds, dtype=np.int64)
        if m.shape != (n, n):
            raise InstanceError(
                f"flight time matrix is {m.shape}, expected ({n}, {n})")
        if not (m == m.T).all():
            raise InstanceError("flight time matrix is not symmetric")
        if (np.diag(m) != 0).any():
            raise InstanceError("flight time matrix diagonal must be zero")
        off = m[~np.eye(n, dtype=bool)]
        if n > 1 and (off <= 0).any():
            raise InstanceError(
                "flight times between distinct positions must be positive")

    def flight_time(self, from_pos: str, to_pos: str) -> int:
        try:
            i = self.index[from_pos]
        except KeyError:
            raise UnknownPositionError(f"unknown position {from_pos!r}") from None
        try:
            j = self.index[to_pos]
        except KeyError:
            raise UnknownPositionError(f"unknown position {to_pos!r}") from None
        return self.seconds[i][j]

    def position(self, pos_id: str) -> Position:
        try:
            return self.positions[self.index[pos_id]]
        except KeyError:
            raise UnknownPositionError(f"unknown position {pos_id!r}") from None

    def work_positions(self) -> list[str]:
        return [p.id for p in self.positions if p.kind == PositionKind.WORK]

    def __eq__(self, other):
        return (isinstance(other, TrajectoryMap)
                and self.positions == other.positions
                and self.seconds == other.seconds)


def flight_time(trajectory_map: TrajectoryMap, from_pos: str, to_pos: str) -> int:
    return trajectory_map.flight_time(from_pos, to_pos)


class TaskType(str, enum.Enum):
    SINGLE_INSPECTION = "single_inspection"
    COMPOUND_INSPECTION = "compound_inspection"
    MATERIAL_HANDLING = "material_handling"


@dataclass(frozen=True)
class Task:
    """One unit of work occupying start_pos and end_pos while it runs.

    Inspection tasks have identical start and end positions; material
    handling moves a payload and is the only type allowed to differ.
    """

    id: int
    type: TaskType
    start_pos: str
    end_pos: str
    proc_time: int
    predecessors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "predecessors",
                           tuple(sorted(set(self.predecessors))))


@dataclass(frozen=True)
class RechargeStation:
    """A charging site with a fixed number of simultaneous bays."""

    pos: str
    slots: int = 1


@dataclass(frozen=True)
class Uav:
    id: str
    initial_pos: str
    battery_capacity: int = DEFAULT_BATTERY_CAPACITY
    recharge_duration: int = DEFAULT_RECHARGE_DURATION


@dataclass
class UavState:
    """Mutable per-UAV scheduling state, confined to one construction pass.

    battery_used counts airborne seconds (flight, hover, task execution)
    since the last full recharge; waiting on the ground and recharging do
    not consume battery.
    """

    uav_id: str
    cur_pos: str
    ready_time: int = 0
    battery_used: int = 0


class ActionKind(str, enum.Enum):
    FLIGHT = "flight"
    TASK_EXEC = "task_exec"
    HOVER = "hover"
    WAIT_ON_GROUND = "wait_on_ground"
    RECHARGE = "recharge"


# Action kinds during which the UAV is airborne and consuming battery.
AIRBORNE_KINDS = frozenset(
    {ActionKind.FLIGHT, ActionKind.TASK_EXEC, ActionKind.HOVER})


@dataclass(frozen=True)
class Action:
    """One contiguous span of a UAV timeline.

    Non-flight actions keep from_pos == to_pos. task_id is set only for
    task_exec actions, station only for recharge and wait_on_ground.
    """

    kind: ActionKind
    start: int
    end: int
    from_pos: str
    to_pos: str
    task_id: int | None = None
    station: str | None = None


class PrecedenceGraph:
    """Directed acyclic dependency structure over task ids."""

    def __init__(self, tasks: dict[int, Task]):
        self.task_ids = sorted(tasks)
        self.direct_predecessors = {
            t: frozenset(tasks[t].predecessors) for t in self.task_ids}
        succs: dict[int, set[int]] = {t: set() for t in self.task_ids}
        for t, preds in self.direct_predecessors.items():
            for p in preds:
                if p in succs:
                    succs[p].add(t)
        self.direct_successors = {t: frozenset(s) for t, s in succs.items()}

    @classmethod
    def from_tasks(cls, tasks) -> PrecedenceGraph:
        return cls({t.id: t for t in tasks})

    def topological_order(self) -> list[int]:
        """Kahn topological order (ids ascending among ready tasks).

        Raises InstanceError naming the tasks left in a cycle.
        """
        indeg = {t: len(self.direct_predecessors[t]) for t in self.task_ids}
        ready = sorted(t for t, d in indeg.items() if d == 0)
        order = []
        while ready:
            t = ready.pop(0)
            order.append(t)
            for s in sorted(self.direct_successors[t]):
                indeg[s] -= 1
                if indeg[s] == 0:
                    ready.append(s)
            ready.sort()
        if len(order) != len(self.task_ids):
            cyc = sorted(t for t in self.task_ids if t not in set(order))
            raise InstanceError(f"precedence graph has a cycle among tasks {cyc}")
        return order

    def transitive_predecessors(self) -> dict[int, frozenset[int]]:
        closure: dict[int, frozenset[int]] = {}
        for t in self.topological_order():
            acc: set[int] = set()
            for p in self.direct_predecessors[t]:
                acc.add(p)
                acc |= closure[p]
            closure[t] = frozenset(acc)
        return closure

    def transitive_successors(self) -> dict[int, frozenset[int]]:
        closure: dict[int, frozenset[int]] = {}
        for t in reversed(self.topological_order()):
            acc: set[int] = set()
            for s in self.direct_successors[t]:
                acc.add(s)
                acc |= closure[s]
            closure[t] = frozenset(acc)
        return closure

    def redundant_edges(self) -> list[tuple[int, int]]:
        """Direct edges already implied by a longer path."""
        closure = self.transitive_successors()
        redundant = []
        for u in self.task_ids:
            for v in sorted(self.direct_successors[u]):
                if any(v in closure[w]
                       for w in self.direct_successors[u] if w != v):
                    redundant.append((u, v))
        return redundant


def transitive_reduction(edges: set[tuple[int, int]],
                         nodes: list[int]) -> set[tuple[int, int]]:
    """Drop every edge implied by a longer path through the DAG."""
    succs: dict[int, set[int]] = {n: set() for n in nodes}
    for u, v in edges:
        succs[u].add(v)
    # closure by reverse topological sweep; nodes are DAG-ordered by id
    # only when edges go low to high, so do a generic DFS memo instead
    memo: dict[int, set[int]] = {}

    def reach(u: int) -> set[int]:
        if u not in memo:
            memo[u] = set()
            acc = memo[u]
            for v in succs[u]:
                acc.add(v)
                acc |= reach(v)
        return memo[u]

    keep = set()
    for u, v in edges:
        if not any(v in reach(w) for w in succs[u] if w != v):
            keep.add((u, v))
    return keep


@dataclass
class ProblemInstance:
    """An immutable scheduling problem: map, stations, tasks and fleet.

    Treated as read-only after validate(); safe to share across parallel
    runs.
    """

    trajectory_map: TrajectoryMap
    stations: tuple[RechargeStation, ...]
    tasks: tuple[Task, ...]
    uavs: tuple[Uav, ...]
    name: str = "instance"

    def __post_init__(self):
        self.stations = tuple(self.stations)
        self.tasks = tuple(self.tasks)
        self.uavs = tuple(self.uavs)
        self.tasks_by_id = {t.id: t for t in self.tasks}
        self.uavs_by_id = {u.id: u for u in self.uavs}
        self._station_pos = frozenset(s.pos for s in self.stations)
        self._escape: dict[str, int] = {}
        self.validate()

    def task(self, task_id: int) -> Task:
        try:
            return self.tasks_by_id[task_id]
        except KeyError:
            raise SequenceError(f"unknown task id {task_id}") from None

    def uav(self, uav_id: str) -> Uav:
        try:
            return self.uavs_by_id[uav_id]
        except KeyError:
            raise InstanceError(f"unknown uav id {uav_id!r}") from None

    def graph(self) -> PrecedenceGraph:
        return PrecedenceGraph(self.tasks_by_id)

    def station_positions(self) -> frozenset[str]:
        return self._station_pos

    def escape_seconds(self, pos: str) -> int:
        """Flight time from pos to its nearest recharge station (cached)."""
        t = self._escape.get(pos)
        if t is None:
            _, t = nearest_recharge_station(self.trajectory_map, pos,
                                            self.stations)
            self._escape[pos] = t
        return t

    def min_battery_capacity(self) -> int:
        return min(u.battery_capacity for u in self.uavs)

    def validate(self):
        m = self.trajectory_map
        if len(self.tasks_by_id) != len(self.tasks):
            raise InstanceError("duplicate task ids")
        if len({u.id for u in self.uavs}) != len(self.uavs):
            raise InstanceError("duplicate uav ids")
        if len({s.pos for s in self.stations}) != len(self.stations):
            raise InstanceError("duplicate station positions")
        recharge_positions = {p.id for p in m.positions
                              if p.kind == PositionKind.RECHARGE}
        for s in self.stations:
            if m.position(s.pos).kind != PositionKind.RECHARGE:
                raise InstanceError(
                    f"station at {s.pos!r} must sit on a recharge-kind position")
            if s.slots < 1:
                raise InstanceError(f"station {s.pos!r} needs at least one slot")
        unhosted = recharge_positions - {s.pos for s in self.stations}
        if unhosted:
            raise InstanceError(
                f"recharge positions without a station: {sorted(unhosted)}")
        for u in self.uavs:
            m.position(u.initial_pos)
            if u.battery_capacity <= 0 or u.recharge_duration <= 0:
                raise InstanceError(f"uav {u.id!r} has non-positive budgets")
        for t in self.tasks:
            if m.position(t.start_pos).kind != PositionKind.WORK:
                raise InstanceError(
                    f"task {t.id} starts at non-work position {t.start_pos!r}")
            if m.position(t.end_pos).kind != PositionKind.WORK:
                raise InstanceError(
                    f"task {t.id} ends at non-work position {t.end_pos!r}")
            if t.proc_time <= 0:
                raise InstanceError(f"task {t.id} has non-positive proc_time")
            if t.type != TaskType.MATERIAL_HANDLING and t.start_pos != t.end_pos:
                raise InstanceError(
                    f"inspection task {t.id} must start and end at one position")
            for p in t.predecessors:
                if p not in self.tasks_by_id:
                    raise InstanceError(
                        f"task {t.id} references unknown predecessor {p}")
                if p == t.id:
                    raise InstanceError(f"task {t.id} depends on itself")
        if self.tasks:
            if not self.uavs:
                raise InstanceError("instance has tasks but no UAVs")
            if not self.stations:
                raise InstanceError("instance has tasks but no recharge stations")
        graph = self.graph()
        graph.topological_order()
        redundant = graph.redundant_edges()
        if redundant:
            raise InstanceError(
                f"precedence graph has redundant edges {redundant}; "
                "supply the transitive reduction")
        if self.tasks:
            cap = self.min_battery_capacity()
            for t in self.tasks:
                bound = worst_case_engagement_time(t, m, self.stations)
                if bound > cap:
                    raise InstanceError(
                        f"task {t.id} cannot fit any battery window: "
                        f"worst-case airborne time {bound} > capacity {cap}")


def nearest_recharge_station(trajectory_map: TrajectoryMap, pos: str,
                             stations) -> tuple[RechargeStation, int]:
    """Closest station by flight time from pos; ties keep list order."""
    stations = tuple(stations)
    if not stations:
        raise InstanceError("no recharge stations configured")
    best = None
    best_t = None
    for s in stations:
        t = trajectory_map.flight_time(pos, s.pos)
        if best_t is None or t < best_t:
            best, best_t = s, t
    return best, best_t


def task_upper_bound_time(prep_time: int, task: Task,
                          trajectory_map: TrajectoryMap, stations) -> int:
    """Airborne seconds a UAV must afford to take the task now.

    Preparation (flight plus any hover) plus execution plus the escape
    flight to the station nearest the task's end position.
    """
    _, rs = nearest_recharge_station(trajectory_map, task.end_pos, stations)
    return prep_time + task.proc_time + rs


def worst_case_engagement_time(task: Task, trajectory_map: TrajectoryMap,
                               stations) -> int:
    """Feasibility bound: a fresh UAV from the farthest position must be
    able to fly in, execute, and still reach a recharge station."""
    worst_in = max(trajectory_map.flight_time(p.id, task.start_pos)
                   for p in trajectory_map.positions)
    return task_upper_bound_time(worst_in, task, trajectory_map, stations)


@dataclass
class Schedule:
    """Per-UAV ordered action timelines for one instance."""

    instance: ProblemInstance
    actions: dict[str, list[Action]]

    def all_actions(self):
        for uav_id in self.uav_order():
            for a in self.actions[uav_id]:
                yield uav_id, a

    def uav_order(self) -> list[str]:
        ordered = [u.id for u in self.instance.uavs if u.id in self.actions]
        extra = [u for u in self.actions if u not in set(ordered)]
        return ordered + sorted(extra)

    def task_executions(self) -> dict[int, tuple[str, Action]]:
        out: dict[int, tuple[str, Action]] = {}
        for uav_id, a in self.all_actions():
            if a.kind == ActionKind.TASK_EXEC and a.task_id is not None:
                out.setdefault(a.task_id, (uav_id, a))
        return out

    def makespan(self) -> int:
        """Latest action end over the whole fleet; 0 when empty."""
        ends = [a.end for acts in self.actions.values() for a in acts]
        return max(ends) if ends else 0


def makespan(schedule: Schedule) -> int:
    return schedule.makespan()
