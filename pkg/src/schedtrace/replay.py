"""Replay of an event log into execution slices.

Every microsecond between two consecutive events is charged to exactly one
entity: the innermost open IRQ handler if any, otherwise the scheduled task.
Interrupt time is thereby subtracted from the interrupted task, and from
enclosing handlers when interrupts nest.  The analysis window runs from the
first event to the last, so partially observed executions at either edge are
truncated to what the trace shows.
"""

from __future__ import annotations

from enum import Enum
from typing import NamedTuple

from .errors import ConsistencyError, EmptyTraceError
from .model import (
    Entity,
    EntityKind,
    EventLog,
    ExecutionSlice,
    IDLE_TASK_ID,
    Run,
    SliceSet,
    TaskSchedule,
    IrqEnd,
    Window,
)


class ViolationKind(Enum):
    OLD_TASK_MISMATCH = "old_task_mismatch"
    IRQ_END_WITHOUT_BEGIN = "irq_end_without_begin"
    IRQ_END_ID_MISMATCH = "irq_end_id_mismatch"
    IRQ_OPEN_AT_TRACE_END = "irq_open_at_trace_end"


class ConsistencyViolation(NamedTuple):
    at: int
    kind: ViolationKind
    detail: str


def _initial_task(events) -> int:
    """The task running at the window start: `old` of the first switch seen."""
    for ev in events:
        if type(ev) is TaskSchedule:
            return ev.old
    return IDLE_TASK_ID


def build_slices(log: EventLog, strict: bool = True) -> SliceSet:
    """Attribute every instant of the analysis window to exactly one entity.

    Strict mode raises ConsistencyError at the first event that contradicts
    the replayed state.  Lenient mode repairs and keeps going: a bad `old`
    field resyncs the current task to `new`, an unmatched IRQ end is dropped,
    and handlers still open at the end of the trace are closed at the window
    end; every repair is recorded as a diagnostic on the returned SliceSet.
    """
    events = log.events
    if not events:
        raise EmptyTraceError("cannot replay an empty event log")
    window = Window(events[0].at, events[-1].at)

    current = _initial_task(events)
    violations: list[ConsistencyViolation] = []

    slices: list[ExecutionSlice] = []
    pend_entity: Entity | None = None
    pend_start = pend_end = window.start

    task_runs: dict[int, list[Run]] = {}
    irq_runs: dict[int, list[Run]] = {}
    schedule_ins: dict[int, list[int]] = {}

    run_start = window.start
    run_net = 0
    # Open handler frames, innermost last: [irq id, begin at, direct net us].
    stack: list[list[int]] = []

    cursor = window.start
    task_kind = EntityKind.TASK
    irq_kind = EntityKind.IRQ
    # interned Entity values: identity comparison and no churn on big traces
    task_entities: dict[int, Entity] = {}
    irq_entities: dict[int, Entity] = {}

    for ev in events:
        at = ev.at
        if at > cursor:
            if stack:
                frame = stack[-1]
                frame[2] += at - cursor
                iid = frame[0]
                entity = irq_entities.get(iid)
                if entity is None:
                    entity = irq_entities[iid] = Entity(irq_kind, iid)
            else:
                run_net += at - cursor
                entity = task_entities.get(current)
                if entity is None:
                    entity = task_entities[current] = Entity(task_kind, current)
            if entity is pend_entity:
                pend_end = at
            else:
                if pend_entity is not None and pend_end > pend_start:
                    slices.append(ExecutionSlice(pend_entity, pend_start, pend_end))
                pend_entity = entity
                pend_start = cursor
                pend_end = at
            cursor = at
        kind = type(ev)
        if kind is TaskSchedule:
            if ev.old != current:
                violation = ConsistencyViolation(
                    at,
                    ViolationKind.OLD_TASK_MISMATCH,
                    f"switch claims old task {ev.old} but task {current} is current",
                )
                if strict:
                    raise ConsistencyError(violation)
                violations.append(violation)
            if at > run_start:
                task_runs.setdefault(current, []).append(Run(run_start, at, run_net))
            current = ev.new
            run_start = at
            run_net = 0
            schedule_ins.setdefault(ev.new, []).append(at)
        elif kind is IrqEnd:
            if not stack:
                violation = ConsistencyViolation(
                    at,
                    ViolationKind.IRQ_END_WITHOUT_BEGIN,
                    f"IRQ {ev.irq} ends but no handler is open",
                )
                if strict:
                    raise ConsistencyError(violation)
                violations.append(violation)
            elif stack[-1][0] != ev.irq:
                violation = ConsistencyViolation(
                    at,
                    ViolationKind.IRQ_END_ID_MISMATCH,
                    f"IRQ {ev.irq} ends but IRQ {stack[-1][0]} is innermost",
                )
                if strict:
                    raise ConsistencyError(violation)
                violations.append(violation)
            else:
                irq_id, begin, net = stack.pop()
                if at > begin:
                    irq_runs.setdefault(irq_id, []).append(Run(begin, at, net))
        else:  # IrqBegin
            stack.append([ev.irq, at, 0])

    if window.end > run_start:
        task_runs.setdefault(current, []).append(Run(run_start, window.end, run_net))
    while stack:
        irq_id, begin, net = stack.pop()
        violation = ConsistencyViolation(
            window.end,
            ViolationKind.IRQ_OPEN_AT_TRACE_END,
            f"IRQ {irq_id} is still open at the end of the trace",
        )
        if strict:
            raise ConsistencyError(violation)
        violations.append(violation)
        if window.end > begin:
            irq_runs.setdefault(irq_id, []).append(Run(begin, window.end, net))
    if pend_entity is not None and pend_end > pend_start:
        slices.append(ExecutionSlice(pend_entity, pend_start, pend_end))

    return SliceSet(window, slices, task_runs, irq_runs, schedule_ins, violations)


def validate_consistency(log: EventLog) -> list[ConsistencyViolation]:
    """Report every violation a strict replay would hit, without building slices.

    Returns an empty list exactly when build_slices(log, strict=True) would
    succeed; recovery between violations follows the lenient rules.
    """
    events = log.events
    violations: list[ConsistencyViolation] = []
    if not events:
        return violations
    current = _initial_task(events)
    stack: list[int] = []
    for ev in events:
        kind = type(ev)
        if kind is TaskSchedule:
            if ev.old != current:
                violations.append(
                    ConsistencyViolation(
                        ev.at,
                        ViolationKind.OLD_TASK_MISMATCH,
                        f"switch claims old task {ev.old} but task {current} is current",
                    )
                )
            current = ev.new
        elif kind is IrqEnd:
            if not stack:
                violations.append(
                    ConsistencyViolation(
                        ev.at,
                        ViolationKind.IRQ_END_WITHOUT_BEGIN,
                        f"IRQ {ev.irq} ends but no handler is open",
                    )
                )
            elif stack[-1] != ev.irq:
                violations.append(
                    ConsistencyViolation(
                        ev.at,
                        ViolationKind.IRQ_END_ID_MISMATCH,
                        f"IRQ {ev.irq} ends but IRQ {stack[-1]} is innermost",
                    )
                )
            else:
                stack.pop()
        else:
            stack.append(ev.irq)
    while stack:
        irq_id = stack.pop()
        violations.append(
            ConsistencyViolation(
                events[-1].at,
                ViolationKind.IRQ_OPEN_AT_TRACE_END,
                f"IRQ {irq_id} is still open at the end of the trace",
            )
        )
    return violations
