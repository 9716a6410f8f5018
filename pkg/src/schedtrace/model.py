"""Core domain types for scheduler/interrupt trace analysis.

All time values are integer microseconds on the trace clock; time accounting
never goes through floating point, so conservation checks can be exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import TYPE_CHECKING, NamedTuple, Union

from .errors import TimestampRangeError

if TYPE_CHECKING:  # only for annotations; avoids runtime import cycles
    from .replay import ConsistencyViolation
    from .tracefile import ParseDiagnostic

US_PER_MS = 1_000
US_PER_SECOND = 1_000_000
US_PER_MINUTE = 60 * US_PER_SECOND
US_PER_HOUR = 60 * US_PER_MINUTE

# The written timestamp carries a 4-digit hour field, which caps what the
# format can express.  Parsing tolerates larger values; writing does not.
MAX_TIMESTAMP_US = 10_000 * US_PER_HOUR - 1

IDLE_TASK_ID = 0


def timestamp_from_fields(hours, minutes, seconds, ms, us):
    """Combine clock fields into integer microseconds.

    Raises TimestampRangeError when a field is negative or when minutes,
    seconds, milliseconds or microseconds exceed their carrying range.
    """
    if minutes >= 60 or seconds >= 60 or ms >= 1000 or us >= 1000:
        raise TimestampRangeError(
            f"timestamp field out of range: {hours}h {minutes}m {seconds}s {ms} {us}"
        )
    if hours < 0 or minutes < 0 or seconds < 0 or ms < 0 or us < 0:
        raise TimestampRangeError("timestamp fields must be non-negative")
    return ((hours * 60 + minutes) * 60 + seconds) * US_PER_SECOND + ms * US_PER_MS + us


def format_timestamp(t: int) -> str:
    """Render microseconds in the trace file layout, e.g. '0000h 00m 01s 290 602'."""
    if not 0 <= t <= MAX_TIMESTAMP_US:
        raise TimestampRangeError(
            f"timestamp {t} us does not fit the 4-digit-hour trace format"
        )
    hours, rem = divmod(t, US_PER_HOUR)
    minutes, rem = divmod(rem, US_PER_MINUTE)
    seconds, rem = divmod(rem, US_PER_SECOND)
    ms, us = divmod(rem, US_PER_MS)
    return f"{hours:04d}h {minutes:02d}m {seconds:02d}s {ms:03d} {us:03d}"


class EntityKind(IntEnum):
    """What an execution entity is: a scheduled task or an interrupt handler.

    Task ids and IRQ ids live in disjoint namespaces; task 0 is the processor
    idle account, an ordinary task as far as accounting is concerned.
    """

    TASK = 0
    IRQ = 1


class Entity(NamedTuple):
    kind: EntityKind
    id: int

    @property
    def kind_name(self) -> str:
        return "task" if self.kind is EntityKind.TASK else "irq"

    @property
    def label(self) -> str:
        if self.kind is EntityKind.TASK:
            if self.id == IDLE_TASK_ID:
                return "task 0 (idle)"
            return f"task {self.id}"
        return f"irq {self.id}"

    @classmethod
    def task(cls, task_id: int) -> "Entity":
        return cls(EntityKind.TASK, task_id)

    @classmethod
    def irq(cls, irq_id: int) -> "Entity":
        return cls(EntityKind.IRQ, irq_id)


IDLE = Entity(EntityKind.TASK, IDLE_TASK_ID)


class TaskSchedule(NamedTuple):
    """Context switch: the scheduler replaces task `old` with task `new`."""

    at: int
    old: int
    new: int


class IrqBegin(NamedTuple):
    at: int
    irq: int


class IrqEnd(NamedTuple):
    at: int
    irq: int


TraceEvent = Union[TaskSchedule, IrqBegin, IrqEnd]


class Window(NamedTuple):
    """Analysis window: the closed span from the first to the last event."""

    start: int
    end: int

    @property
    def duration_us(self) -> int:
        return self.end - self.start


class ExecutionSlice(NamedTuple):
    """Maximal interval [start, end) charging the processor to one entity."""

    entity: Entity
    start: int
    end: int

    @property
    def duration_us(self) -> int:
        return self.end - self.start


class Run(NamedTuple):
    """One contiguous scheduled run of a task, or one IRQ invocation.

    `net_us` excludes time consumed by handlers nested strictly inside, so a
    task's run net is its dispatch execution time and an IRQ's run net is its
    own handler time.
    """

    start: int
    end: int
    net_us: int


@dataclass(frozen=True)
class EventLog:
    """Parsed trace: events in file order with non-decreasing timestamps."""

    events: list[TraceEvent]
    diagnostics: list["ParseDiagnostic"] = field(default_factory=list)

    @property
    def window(self) -> Window:
        return Window(self.events[0].at, self.events[-1].at)


@dataclass(frozen=True)
class SliceSet:
    """Complete attribution of an analysis window to execution entities.

    Slices are pairwise disjoint, time ordered, and tile
    [window.start, window.end) exactly; dispatch and invocation runs carry the
    sample boundaries that the statistics reports draw from.
    """

    window: Window
    slices: list[ExecutionSlice]
    task_runs: dict[int, list[Run]]
    irq_runs: dict[int, list[Run]]
    schedule_ins: dict[int, list[int]]
    diagnostics: list["ConsistencyViolation"] = field(default_factory=list)

    def net_times(self) -> dict[Entity, int]:
        """Net charged time per entity; sums exactly to the window duration."""
        totals: dict[Entity, int] = {}
        for task_id, runs in self.task_runs.items():
            totals[Entity(EntityKind.TASK, task_id)] = sum(r.net_us for r in runs)
        for irq_id, runs in self.irq_runs.items():
            totals[Entity(EntityKind.IRQ, irq_id)] = sum(r.net_us for r in runs)
        return totals

    def entities(self) -> list[Entity]:
        """Every entity that was scheduled or invoked, tasks first, ids ascending."""
        found = [Entity(EntityKind.TASK, t) for t in self.task_runs]
        found += [Entity(EntityKind.IRQ, i) for i in self.irq_runs]
        return sorted(found)
