"""Battery-aware task scheduling for indoor UAV fleets.

A list-scheduling constructor turns a task sequence into a full fleet
timeline under battery, recharge-bay, position and precedence
constraints; a discrete particle swarm searches the sequence space for
a short makespan.
"""

from .model import (
    Action,
    ActionKind,
    InstanceError,
    Position,
    PositionKind,
    PrecedenceGraph,
    ProblemInstance,
    RechargeStation,
    Schedule,
    SchedulingError,
    SequenceError,
    Task,
    TaskType,
    TrajectoryMap,
    Uav,
    UavState,
    flight_time,
    makespan,
    nearest_recharge_station,
    task_upper_bound_time,
)
from .eat import (
    PositionOccupancy,
    RechargeChoice,
    SlotOccupancy,
    UavCandidate,
    build_schedule,
    check_sequence,
    pick_earliest_uav,
    select_recharge_station,
    task_available_time,
    uav_candidate,
)
from .validate import Violation, validate_schedule
from .sequences import (
    PRIORITY_RULES,
    apply_swaps,
    extend_sequence,
    is_feasible_sequence,
    priority_orderings,
    repair,
    sequence_difference,
)
from .io import load_instance, save_instance
from .pso import PsoConfig, RunReport, fitness, generate_initial_swarm, run_pso, update_velocity
from .datagen import GenSpec, GenerationError, generate_instance, validate_precedence
from .sampledata import sample_instance, sample_map

__version__ = "0.1.0"
