"""The four analysis reports and their text/csv/json rendering.

Reports are plain values computed from a SliceSet: average processor load,
slotted processor utilization, per-entity task statistics, and per-entity
execution timelines.  Rendering is deterministic: entities are ordered tasks
first then IRQs, ids ascending, and slots/segments in time order.  Times stay
integer microseconds in csv and json; text output adds human-scaled
durations.  Fractions are printed with six decimal places.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import ceil
from typing import NamedTuple

from .errors import EmptyWindowError
from .model import (
    Entity,
    EntityKind,
    ExecutionSlice,
    IDLE,
    Run,
    SliceSet,
    Window,
    format_timestamp,
)
from .stats import (
    ExponentialFit,
    Histogram,
    SampleSummary,
    UniformFit,
    fit_exponential,
    fit_uniform,
    histogram,
    summarize,
)

RUNNING = "running"
PREEMPTED_BY_IRQ = "preempted_by_irq"
INACTIVE = "inactive"
ACTIVE = "active"

TEXT, CSV, JSON = "text", "csv", "json"
FORMATS = (TEXT, CSV, JSON)


# ---------------------------------------------------------------------------
# report values


@dataclass(frozen=True)
class LoadRow:
    entity: Entity
    net_us: int
    utilization: float


@dataclass(frozen=True)
class LoadReport:
    window: Window
    rows: list[LoadRow]
    idle_fraction: float


@dataclass(frozen=True)
class UtilizationSlot:
    start_us: int
    span_us: int
    partial: bool
    fractions: list[tuple[Entity, float]]


@dataclass(frozen=True)
class UtilizationReport:
    window: Window
    view: Window
    slot_width_us: int
    slots: list[UtilizationSlot]


@dataclass(frozen=True)
class SeriesStats:
    """Summary, histogram and fits for one sample series (executions or periods)."""

    summary: SampleSummary
    histogram: Histogram
    exponential: ExponentialFit | None
    uniform: UniformFit
    notes: list[str]


@dataclass(frozen=True)
class EntityStats:
    entity: Entity
    net_us: int
    share: float
    dispatches: int
    execution: SeriesStats
    period: SeriesStats | None


@dataclass(frozen=True)
class StatsReport:
    window: Window
    bins: int
    rows: list[EntityStats]


class TimelineSegment(NamedTuple):
    state: str
    start_us: int
    end_us: int


@dataclass(frozen=True)
class EntityTimeline:
    entity: Entity
    segments: list[TimelineSegment]


@dataclass(frozen=True)
class TimelineReport:
    window: Window
    view: Window
    entities: list[EntityTimeline]


Report = LoadReport | UtilizationReport | StatsReport | TimelineReport


# ---------------------------------------------------------------------------
# computations


def _clip_view(view, window: Window) -> Window:
    if view is None:
        clipped = window
    else:
        start, end = view
        clipped = Window(max(start, window.start), min(end, window.end))
    if clipped.duration_us <= 0:
        raise EmptyWindowError(
            f"no time to analyze in [{clipped.start}, {clipped.end}] us"
        )
    return clipped


def average_load(s: SliceSet) -> LoadReport:
    """Net time and fraction of the window per entity; idle is task 0's share."""
    duration = s.window.duration_us
    if duration <= 0:
        raise EmptyWindowError("analysis window has zero length")
    nets = s.net_times()
    rows = [
        LoadRow(entity, net, net / duration)
        for entity, net in sorted(nets.items())
        if net > 0
    ]
    idle = next((r.utilization for r in rows if r.entity == IDLE), 0.0)
    return LoadReport(s.window, rows, idle)


def utilization(
    s: SliceSet, slot_width_us: int = 100_000, view=None
) -> UtilizationReport:
    """Per-entity utilization over consecutive time slots.

    Slots start at the view start and are slot_width_us wide; a final slot
    cut short by the view end is normalized by its actual span and flagged
    partial.  Entities with no charge inside a slot are omitted from it.
    """
    if slot_width_us < 1:
        raise ValueError("slot width must be at least 1 us")
    clipped = _clip_view(view, s.window)
    width = slot_width_us
    n_slots = ceil(clipped.duration_us / width)
    charged: list[dict[Entity, int]] = [{} for _ in range(n_slots)]
    for sl in s.slices:
        if sl.start >= clipped.end:
            break
        a = sl.start if sl.start > clipped.start else clipped.start
        b = sl.end if sl.end < clipped.end else clipped.end
        if a >= b:
            continue
        entity = sl.entity
        idx = (a - clipped.start) // width
        while a < b:
            slot_end = clipped.start + (idx + 1) * width
            if slot_end > clipped.end:
                slot_end = clipped.end
            take = b if b < slot_end else slot_end
            acc = charged[idx]
            acc[entity] = acc.get(entity, 0) + (take - a)
            a = take
            idx += 1
    slots = []
    for idx in range(n_slots):
        start = clipped.start + idx * width
        span = min(width, clipped.end - start)
        fractions = [
            (entity, us / span) for entity, us in sorted(charged[idx].items())
        ]
        slots.append(UtilizationSlot(start, span, span < width, fractions))
    return UtilizationReport(s.window, clipped, width, slots)


def _series(samples: list[int], bins: int) -> SeriesStats:
    notes: list[str] = []
    positives = [x for x in samples if x > 0]
    if len(positives) < len(samples):
        dropped = len(samples) - len(positives)
        notes.append(f"{dropped} zero sample(s) excluded from the exponential fit")
    exponential = fit_exponential(positives) if positives else None
    if exponential is None:
        notes.append("exponential fit skipped: no positive samples")
    return SeriesStats(
        summarize(samples), histogram(samples, bins), exponential, fit_uniform(samples), notes
    )


def task_statistics(s: SliceSet, bins: int = 20) -> StatsReport:
    """Execution-time and period statistics per entity.

    Execution samples are per dispatch for tasks (net of interrupt time) and
    per invocation for IRQ handlers (net of nested handlers).  Period samples
    are the deltas between successive schedule-ins of a task; a task seen
    scheduled in fewer than twice has no period section.
    """
    duration = s.window.duration_us
    if duration <= 0:
        raise EmptyWindowError("analysis window has zero length")
    rows = []
    for entity in s.entities():
        if entity.kind is EntityKind.TASK:
            runs = s.task_runs[entity.id]
        else:
            runs = s.irq_runs[entity.id]
        samples = [r.net_us for r in runs]
        net = sum(samples)
        period = None
        if entity.kind is EntityKind.TASK:
            ins = s.schedule_ins.get(entity.id, ())
            if len(ins) >= 2:
                deltas = [b - a for a, b in zip(ins, ins[1:])]
                period = _series(deltas, bins)
        rows.append(
            EntityStats(
                entity, net, net / duration, len(runs), _series(samples, bins), period
            )
        )
    return StatsReport(s.window, bins, rows)


def _wrap_segments(states: list[str], starts: list[int], ends: list[int]):
    # TimelineSegment._make skips the keyword-handling __new__; it matters
    # at millions of segments
    return list(map(TimelineSegment._make, zip(states, starts, ends)))


def _task_timeline(
    runs: list[Run], own_slices: list[ExecutionSlice], view: Window
) -> list[TimelineSegment]:
    # Hot path for big traces: segments tile the view, so merging only needs
    # a state comparison; accumulate into parallel lists and wrap once.
    states: list[str] = []
    starts: list[int] = []
    ends: list[int] = []

    def push(state: str, a: int, b: int) -> None:
        if b <= a:
            return
        if states and states[-1] == state:
            ends[-1] = b
        else:
            states.append(state)
            starts.append(a)
            ends.append(b)

    view_start = view.start
    view_end = view.end
    pos = view_start
    slice_idx = 0
    n_slices = len(own_slices)
    for run in runs:
        run_end = run.end
        a = run.start
        if a < view_start:
            a = view_start
        b = run_end if run_end < view_end else view_end
        if a >= b:
            # still consume slices belonging to runs left of the view
            while slice_idx < n_slices and own_slices[slice_idx].end <= run_end:
                slice_idx += 1
            continue
        push(INACTIVE, pos, a)
        inner = a
        while slice_idx < n_slices:
            sl = own_slices[slice_idx]
            sa = sl.start
            if sa >= run_end:
                break
            sb = sl.end
            if sa < a:
                sa = a
            cut = sb > b
            if cut:
                sb = b
            if sb > sa:
                push(PREEMPTED_BY_IRQ, inner, sa)
                push(RUNNING, sa, sb)
                inner = sb
            if cut:
                # the slice continues past this run's visible end; keep it
                # for the next run (a slice can span a self-switch)
                break
            slice_idx += 1
        push(PREEMPTED_BY_IRQ, inner, b)
        pos = b
    push(INACTIVE, pos, view_end)
    return _wrap_segments(states, starts, ends)


def _irq_timeline(runs: list[Run], view: Window) -> list[TimelineSegment]:
    # Same-id invocations may overlap when a handler nests within itself, and
    # the replay records them in pop order, so take the union of the spans.
    states: list[str] = []
    starts: list[int] = []
    ends: list[int] = []
    view_start = view.start
    view_end = view.end
    covered = view_start
    for run in sorted(runs):
        a = run.start
        b = run.end
        if a < view_start:
            a = view_start
        if b > view_end:
            b = view_end
        if b <= covered or b <= a:
            continue
        if a > covered:
            states.append(INACTIVE)
            starts.append(covered)
            ends.append(a)
        else:
            a = covered
        if states and states[-1] == ACTIVE:
            ends[-1] = b
        else:
            states.append(ACTIVE)
            starts.append(a)
            ends.append(b)
        covered = b
    if covered < view_end:
        states.append(INACTIVE)
        starts.append(covered)
        ends.append(view_end)
    return _wrap_segments(states, starts, ends)


def timeline(s: SliceSet, view=None) -> TimelineReport:
    """Per-entity state segments tiling the view.

    Task states are running / preempted_by_irq / inactive; IRQ states are
    active / inactive (a handler is active while anywhere on the IRQ stack,
    nested handlers included).  Every entity active anywhere in the window is
    listed, even if it never runs inside a zoomed view.
    """
    clipped = _clip_view(view, s.window)
    task_slices: dict[int, list[ExecutionSlice]] = {}
    for sl in s.slices:
        if sl.entity.kind is EntityKind.TASK:
            task_slices.setdefault(sl.entity.id, []).append(sl)
    entities = []
    for entity in s.entities():
        if entity.kind is EntityKind.TASK:
            segments = _task_timeline(
                s.task_runs[entity.id], task_slices.get(entity.id, []), clipped
            )
        else:
            segments = _irq_timeline(s.irq_runs[entity.id], clipped)
        entities.append(EntityTimeline(entity, segments))
    return TimelineReport(s.window, clipped, entities)


# ---------------------------------------------------------------------------
# rendering helpers


def human_duration(us) -> str:
    """Scale a microsecond duration for human reading (us / ms / s)."""
    if us < 1_000:
        if isinstance(us, float):
            return f"{us:.3f} us"
        return f"{us} us"
    if us < 1_000_000:
        return f"{us / 1_000:.3f} ms"
    return f"{us / 1_000_000:.3f} s"


def _frac(x: float) -> str:
    return f"{x:.6f}"


def _num(x) -> str:
    # csv/json numbers: integers stay integers, floats keep full precision
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _table(header: list[str], rows: list[list[str]], align: str) -> list[str]:
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            if len(cell) > widths[i]:
                widths[i] = len(cell)
    lines = []
    for row in [header] + rows:
        cells = []
        for i, cell in enumerate(row):
            if align[i] == "r":
                cells.append(cell.rjust(widths[i]))
            else:
                cells.append(cell.ljust(widths[i]))
        lines.append(("  " + "  ".join(cells)).rstrip())
    return lines


def _span_text(us: int) -> str:
    human = human_duration(us)
    if human == f"{us} us":
        return human
    return f"{human} ({us} us)"


def _window_lines(window: Window) -> list[str]:
    return [
        f"  window  {format_timestamp(window.start)} .. {format_timestamp(window.end)}",
        f"  span    {_span_text(window.duration_us)}",
    ]


def _entity_json(entity: Entity) -> dict:
    return {"kind": entity.kind_name, "id": entity.id}


def _entity_from_json(data: dict) -> Entity:
    kind = EntityKind.TASK if data["kind"] == "task" else EntityKind.IRQ
    return Entity(kind, data["id"])


def _window_json(window: Window) -> dict:
    return {"start_us": window.start, "end_us": window.end}


def _window_from_json(data: dict) -> Window:
    return Window(data["start_us"], data["end_us"])


# ---------------------------------------------------------------------------
# load report rendering


def _load_text(report: LoadReport) -> str:
    lines = ["Average processor load"]
    lines += _window_lines(report.window)
    lines.append("")
    rows = [
        [row.entity.label, f"{row.net_us} us", _frac(row.utilization)]
        for row in report.rows
    ]
    total_net = sum(row.net_us for row in report.rows)
    total_frac = sum(row.utilization for row in report.rows)
    rows.append(["total", f"{total_net} us", _frac(total_frac)])
    lines += _table(["entity", "net time", "utilization"], rows, "lrr")
    lines.append("")
    lines.append(f"  idle fraction  {_frac(report.idle_fraction)}")
    lines.append("")
    return "\n".join(lines)


def _load_csv(report: LoadReport) -> str:
    lines = ["entity,kind,net_us,utilization"]
    for row in report.rows:
        lines.append(
            f"{row.entity.id},{row.entity.kind_name},{row.net_us},{_frac(row.utilization)}"
        )
    lines.append("")
    return "\n".join(lines)


def _load_json(report: LoadReport) -> dict:
    return {
        "report": "load",
        "units": {"time": "us", "utilization": "fraction"},
        "window": _window_json(report.window),
        "idle_fraction": report.idle_fraction,
        "entities": [
            {
                **_entity_json(row.entity),
                "net_us": row.net_us,
                "utilization": row.utilization,
            }
            for row in report.rows
        ],
    }


def _load_from_json(data: dict) -> LoadReport:
    rows = [
        LoadRow(_entity_from_json(item), item["net_us"], item["utilization"])
        for item in data["entities"]
    ]
    return LoadReport(_window_from_json(data["window"]), rows, data["idle_fraction"])


# ---------------------------------------------------------------------------
# utilization report rendering


def _utilization_text(report: UtilizationReport) -> str:
    lines = ["Processor utilization"]
    lines += _window_lines(report.window)
    lines.append(f"  view    {report.view.start} .. {report.view.end} us")
    lines.append(f"  slot    {report.slot_width_us} us")
    lines.append("")
    rows = []
    for slot in report.slots:
        marker = "partial" if slot.partial else ""
        for entity, fraction in slot.fractions:
            rows.append(
                [
                    str(slot.start_us),
                    str(slot.span_us),
                    marker,
                    entity.label,
                    _frac(fraction),
                ]
            )
    lines += _table(
        ["slot_start_us", "span_us", "note", "entity", "fraction"], rows, "rrllr"
    )
    lines.append("")
    return "\n".join(lines)


def _utilization_csv(report: UtilizationReport) -> str:
    lines = ["slot_start_us,slot_span_us,entity,kind,fraction"]
    for slot in report.slots:
        for entity, fraction in slot.fractions:
            lines.append(
                f"{slot.start_us},{slot.span_us},{entity.id},{entity.kind_name},{_frac(fraction)}"
            )
    lines.append("")
    return "\n".join(lines)


def _utilization_json(report: UtilizationReport) -> dict:
    return {
        "report": "utilization",
        "units": {"time": "us", "utilization": "fraction"},
        "window": _window_json(report.window),
        "view": _window_json(report.view),
        "slot_width_us": report.slot_width_us,
        "slots": [
            {
                "start_us": slot.start_us,
                "span_us": slot.span_us,
                "partial": slot.partial,
                "entities": [
                    {**_entity_json(entity), "fraction": fraction}
                    for entity, fraction in slot.fractions
                ],
            }
            for slot in report.slots
        ],
    }


def _utilization_from_json(data: dict) -> UtilizationReport:
    slots = [
        UtilizationSlot(
            item["start_us"],
            item["span_us"],
            item["partial"],
            [
                (_entity_from_json(ent), ent["fraction"])
                for ent in item["entities"]
            ],
        )
        for item in data["slots"]
    ]
    return UtilizationReport(
        _window_from_json(data["window"]),
        _window_from_json(data["view"]),
        data["slot_width_us"],
        slots,
    )


# ---------------------------------------------------------------------------
# stats report rendering


def _series_text(title: str, series: SeriesStats) -> list[str]:
    s = series.summary
    lines = [f"    {title}:"]
    lines.append(f"      samples        {s.count}")
    lines.append(f"      minimum        {human_duration(s.minimum)}")
    lines.append(f"      worst case     {human_duration(s.maximum)}")
    lines.append(f"      average        {human_duration(s.mean)}")
    if series.exponential is not None:
        e = series.exponential
        lines.append(
            f"      exponential    rate {e.rate_per_us:.6g} /us"
            f"   log-likelihood {e.log_likelihood:.6g}   ks {_frac(e.ks)}"
        )
    u = series.uniform
    lines.append(
        f"      uniform        [{_num(u.lower)}, {_num(u.upper)}] us   ks {_frac(u.ks)}"
    )
    h = series.histogram
    for i, count in enumerate(h.counts):
        lines.append(
            f"      bin            [{_num(h.edges[i])}, {_num(h.edges[i + 1])}): {count}"
        )
    for note in series.notes:
        lines.append(f"      note           {note}")
    return lines


def _stats_text(report: StatsReport) -> str:
    lines = ["Task statistics"]
    lines += _window_lines(report.window)
    lines.append(f"  bins    {report.bins}")
    for row in report.rows:
        lines.append("")
        lines.append(f"  {row.entity.label}")
        lines.append(f"    utilization    {_frac(row.share)}")
        lines.append(f"    net time       {_span_text(row.net_us)}")
        lines.append(f"    dispatches     {row.dispatches}")
        lines += _series_text("execution time", row.execution)
        if row.period is not None:
            lines += _series_text("period", row.period)
    lines.append("")
    return "\n".join(lines)


def _stats_csv(report: StatsReport) -> str:
    lines = [
        "entity,kind,share,dispatches,min_us,max_us,mean_us,"
        "exp_rate_per_us,exp_ks,uni_lower_us,uni_upper_us,uni_ks"
    ]
    for row in report.rows:
        s = row.execution.summary
        if row.execution.exponential is not None:
            e = row.execution.exponential
            exp_rate, exp_ks = _num(e.rate_per_us), _frac(e.ks)
        else:
            exp_rate, exp_ks = "", ""
        u = row.execution.uniform
        lines.append(
            f"{row.entity.id},{row.entity.kind_name},{_frac(row.share)},{row.dispatches},"
            f"{_num(s.minimum)},{_num(s.maximum)},{_num(s.mean)},"
            f"{exp_rate},{exp_ks},{_num(u.lower)},{_num(u.upper)},{_frac(u.ks)}"
        )
    lines.append("")
    return "\n".join(lines)


def render_stats_histograms_csv(report: StatsReport) -> str:
    """The histogram companion table to the stats csv, one row per bin."""
    lines = ["entity,kind,series,bin_lower,bin_upper,count"]
    for row in report.rows:
        for name, series in (("exec", row.execution), ("period", row.period)):
            if series is None:
                continue
            h = series.histogram
            for i, count in enumerate(h.counts):
                lines.append(
                    f"{row.entity.id},{row.entity.kind_name},{name},"
                    f"{_num(h.edges[i])},{_num(h.edges[i + 1])},{count}"
                )
    lines.append("")
    return "\n".join(lines)


def _summary_json(s: SampleSummary) -> dict:
    return {
        "count": s.count,
        "total_us": s.total,
        "min_us": s.minimum,
        "max_us": s.maximum,
        "mean_us": s.mean,
    }


def _summary_from_json(data: dict) -> SampleSummary:
    return SampleSummary(
        data["count"], data["total_us"], data["min_us"], data["max_us"], data["mean_us"]
    )


def _series_json(series: SeriesStats) -> dict:
    if series.exponential is None:
        exponential = None
    else:
        exponential = {
            "rate_per_us": series.exponential.rate_per_us,
            "log_likelihood": series.exponential.log_likelihood,
            "ks": series.exponential.ks,
        }
    return {
        "summary": _summary_json(series.summary),
        "histogram": {
            "edges": series.histogram.edges,
            "counts": series.histogram.counts,
        },
        "exponential": exponential,
        "uniform": {
            "lower_us": series.uniform.lower,
            "upper_us": series.uniform.upper,
            "ks": series.uniform.ks,
        },
        "notes": series.notes,
    }


def _series_from_json(data) -> SeriesStats | None:
    if data is None:
        return None
    if data["exponential"] is None:
        exponential = None
    else:
        exponential = ExponentialFit(
            data["exponential"]["rate_per_us"],
            data["exponential"]["log_likelihood"],
            data["exponential"]["ks"],
        )
    return SeriesStats(
        _summary_from_json(data["summary"]),
        Histogram(data["histogram"]["edges"], data["histogram"]["counts"]),
        exponential,
        UniformFit(
            data["uniform"]["lower_us"],
            data["uniform"]["upper_us"],
            data["uniform"]["ks"],
        ),
        data["notes"],
    )


def _stats_json(report: StatsReport) -> dict:
    return {
        "report": "stats",
        "units": {"time": "us", "share": "fraction"},
        "window": _window_json(report.window),
        "bins": report.bins,
        "entities": [
            {
                **_entity_json(row.entity),
                "net_us": row.net_us,
                "share": row.share,
                "dispatches": row.dispatches,
                "execution": _series_json(row.execution),
                "period": None if row.period is None else _series_json(row.period),
            }
            for row in report.rows
        ],
    }


def _stats_from_json(data: dict) -> StatsReport:
    rows = [
        EntityStats(
            _entity_from_json(item),
            item["net_us"],
            item["share"],
            item["dispatches"],
            _series_from_json(item["execution"]),
            _series_from_json(item["period"]),
        )
        for item in data["entities"]
    ]
    return StatsReport(_window_from_json(data["window"]), data["bins"], rows)


# ---------------------------------------------------------------------------
# timeline report rendering


def _timeline_text(report: TimelineReport) -> str:
    lines = ["Task execution timeline"]
    lines += _window_lines(report.window)
    lines.append(f"  view    {report.view.start} .. {report.view.end} us")
    lines.append("")
    label_w = max((len(e.entity.label) for e in report.entities), default=6)
    ts_w = len(str(report.view.end))
    header = (
        f"  {'entity'.ljust(label_w)}  {'state'.ljust(16)}  "
        f"{'start_us'.rjust(ts_w)}  {'end_us'.rjust(ts_w)}  duration"
    )
    lines.append(header.rstrip())
    padded_state: dict[str, str] = {}
    for ent in report.entities:
        prefix = "  " + ent.entity.label.ljust(label_w) + "  "
        for state, a, b in ent.segments:
            st = padded_state.get(state)
            if st is None:
                st = padded_state[state] = state.ljust(16)
            d = b - a
            dur = f"{d} us" if d < 1_000 else human_duration(d)
            lines.append(
                f"{prefix}{st}  {str(a).rjust(ts_w)}  {str(b).rjust(ts_w)}  {dur}"
            )
    lines.append("")
    return "\n".join(lines)


def _timeline_csv(report: TimelineReport) -> str:
    lines = ["entity,kind,state,start_us,end_us"]
    for ent in report.entities:
        eid = ent.entity.id
        kind = ent.entity.kind_name
        for seg in ent.segments:
            lines.append(f"{eid},{kind},{seg.state},{seg.start_us},{seg.end_us}")
    lines.append("")
    return "\n".join(lines)


def _timeline_json(report: TimelineReport) -> dict:
    return {
        "report": "timeline",
        "units": {"time": "us"},
        "window": _window_json(report.window),
        "view": _window_json(report.view),
        "entities": [
            {
                **_entity_json(ent.entity),
                "segments": [
                    {"state": seg.state, "start_us": seg.start_us, "end_us": seg.end_us}
                    for seg in ent.segments
                ],
            }
            for ent in report.entities
        ],
    }


def _timeline_from_json(data: dict) -> TimelineReport:
    entities = [
        EntityTimeline(
            _entity_from_json(item),
            [
                TimelineSegment(seg["state"], seg["start_us"], seg["end_us"])
                for seg in item["segments"]
            ],
        )
        for item in data["entities"]
    ]
    return TimelineReport(
        _window_from_json(data["window"]), _window_from_json(data["view"]), entities
    )


# ---------------------------------------------------------------------------
# dispatch


_RENDERERS = {
    LoadReport: {TEXT: _load_text, CSV: _load_csv, JSON: _load_json},
    UtilizationReport: {
        TEXT: _utilization_text,
        CSV: _utilization_csv,
        JSON: _utilization_json,
    },
    StatsReport: {TEXT: _stats_text, CSV: _stats_csv, JSON: _stats_json},
    TimelineReport: {
        TEXT: _timeline_text,
        CSV: _timeline_csv,
        JSON: _timeline_json,
    },
}


def render(report: Report, fmt: str = TEXT) -> str:
    """Render a report value deterministically in text, csv or json."""
    try:
        renderer = _RENDERERS[type(report)][fmt]
    except KeyError:
        raise ValueError(f"cannot render {type(report).__name__} as {fmt!r}") from None
    rendered = renderer(report)
    if fmt == JSON:
        return json.dumps(rendered, indent=2) + "\n"
    return rendered


_FROM_JSON = {
    "load": _load_from_json,
    "utilization": _utilization_from_json,
    "stats": _stats_from_json,
    "timeline": _timeline_from_json,
}


def report_from_json(data) -> Report:
    """Rebuild a report value from rendered json (text or parsed dict)."""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    return _FROM_JSON[data["report"]](data)
