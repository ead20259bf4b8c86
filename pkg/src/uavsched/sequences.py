"""Permutation algebra for task sequences.

Sequences are lists of task ids. Velocities for the discrete swarm are
ordered lists of index transpositions (swap pairs) applied left to
right. Repair restores precedence feasibility with a stable greedy
decode that keeps the relative priority of every task as far as its
predecessors allow.
"""

from __future__ import annotations

import heapq

from .model import ProblemInstance, SequenceError


def apply_swaps(sequence, pairs) -> list[int]:
    """Apply index transpositions left to right to a copy of sequence."""
    out = list(sequence)
    n = len(out)
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise SequenceError(
                f"swap pair ({i}, {j}) out of range for length {n}")
        out[i], out[j] = out[j], out[i]
    return out


def sequence_difference(target, current) -> list[tuple[int, int]]:
    """Ordered swap pairs turning current into target.

    Greedy: walk positions left to right and, wherever the working copy
    disagrees with the target, swap the target's element into place.
    Applying the result to current yields target; the list never exceeds
    len - 1 pairs and skips positions already in agreement.
    """
    if sorted(current) != sorted(target):
        raise SequenceError("sequences are not permutations of each other")
    work = list(current)
    pos = {t: i for i, t in enumerate(work)}
    pairs: list[tuple[int, int]] = []
    for i, want in enumerate(target):
        have = work[i]
        if have == want:
            continue
        j = pos[want]
        pairs.append((i, j))
        work[i], work[j] = want, have
        pos[want], pos[have] = i, j
    return pairs


def is_feasible_sequence(sequence, instance: ProblemInstance) -> bool:
    """True when every task appears after all of its predecessors."""
    seen: set[int] = set()
    for tid in sequence:
        task = instance.tasks_by_id.get(tid)
        if task is None or tid in seen:
            return False
        if any(p not in seen for p in task.predecessors):
            return False
        seen.add(tid)
    return True


def _greedy_order(items, predecessors, done: set[int]) -> list[int]:
    """Emit items in given priority order, each as soon as its
    predecessors (within items or already done) are emitted."""
    rank = {tid: i for i, tid in enumerate(items)}
    pending = {tid: [p for p in predecessors[tid]
                     if p not in done and p in rank]
               for tid in items}
    waiting_on: dict[int, list[int]] = {}
    ready: list[tuple[int, int]] = []
    for tid in items:
        if pending[tid]:
            for p in pending[tid]:
                waiting_on.setdefault(p, []).append(tid)
        else:
            heapq.heappush(ready, (rank[tid], tid))
    out: list[int] = []
    while ready:
        _, tid = heapq.heappop(ready)
        out.append(tid)
        for follower in waiting_on.get(tid, ()):
            rest = pending[follower]
            rest.remove(tid)
            if not rest:
                heapq.heappush(ready, (rank[follower], follower))
    if len(out) != len(items):
        stuck = sorted(set(items) - set(out))
        raise SequenceError(
            f"tasks {stuck} cannot be ordered: missing or cyclic predecessors")
    return out


def repair(sequence, instance: ProblemInstance) -> list[int]:
    """Reorder a permutation into precedence feasibility, stably.

    Tasks keep their relative priority; one that arrives before a
    predecessor is deferred until the predecessor has been emitted.
    Feasible inputs pass through unchanged and the operation is
    idempotent.
    """
    seq = list(sequence)
    if len(set(seq)) != len(seq):
        raise SequenceError("sequence contains duplicate task ids")
    preds = {tid: instance.task(tid).predecessors for tid in seq}
    return _greedy_order(seq, preds, done=set())


def extend_sequence(prefix, instance: ProblemInstance) -> list[int]:
    """Complete a feasible prefix with the remaining tasks in id order,
    deferring each until its predecessors are placed."""
    seen: set[int] = set()
    for tid in prefix:
        task = instance.task(tid)
        if tid in seen:
            raise SequenceError(f"task {tid} appears twice in the sequence")
        for p in task.predecessors:
            if p not in seen:
                raise SequenceError(
                    f"task {tid} is sequenced before its predecessor {p}")
        seen.add(tid)
    rest = sorted(t.id for t in instance.tasks if t.id not in seen)
    preds = {tid: instance.task(tid).predecessors for tid in rest}
    return list(prefix) + _greedy_order(rest, preds, done=seen)


PRIORITY_RULES = (
    "positional-weight-desc",
    "inverse-positional-weight-asc",
    "direct-predecessors-asc",
    "direct-followers-desc",
    "proc-time-desc",
    "proc-time-asc",
    "transitive-predecessors-asc",
    "transitive-followers-desc",
)


def priority_orderings(instance: ProblemInstance) -> dict[str, list[int]]:
    """Eight classic priority-rule sequences, precedence-repaired.

    Positional weight is a task's processing time plus that of all its
    transitive followers; the inverse variant sums transitive
    predecessors instead. Ties always break toward the lower task id.
    """
    graph = instance.graph()
    ids = graph.task_ids
    proc = {t: instance.task(t).proc_time for t in ids}
    trans_pred = graph.transitive_predecessors()
    trans_succ = graph.transitive_successors()
    pw = {t: proc[t] + sum(proc[s] for s in trans_succ[t]) for t in ids}
    ipw = {t: proc[t] + sum(proc[p] for p in trans_pred[t]) for t in ids}
    keys = {
        "positional-weight-desc": lambda t: -pw[t],
        "inverse-positional-weight-asc": lambda t: ipw[t],
        "direct-predecessors-asc": lambda t: len(graph.direct_predecessors[t]),
        "direct-followers-desc": lambda t: -len(graph.direct_successors[t]),
        "proc-time-desc": lambda t: -proc[t],
        "proc-time-asc": lambda t: proc[t],
        "transitive-predecessors-asc": lambda t: len(trans_pred[t]),
        "transitive-followers-desc": lambda t: -len(trans_succ[t]),
    }
    out: dict[str, list[int]] = {}
    for name in PRIORITY_RULES:
        key = keys[name]
        ranked = sorted(ids, key=lambda t: (key(t), t))
        out[name] = repair(ranked, instance)
    return out
