"""Reader and writer for the text trace format.

One event per line::

    <0000h 00m 01s 290 602> Task schedule: old 5 new 3
    <0000h 00m 01s 290 838> IRQ begin: 16
    <0000h 00m 01s 290 861> IRQ end: 16

Reading is tolerant: any run of spaces/tabs between tokens, any digit count
per field, LF or CRLF.  Writing is canonical: zero-padded fields, single
spaces, LF line endings.
"""

from __future__ import annotations

import re
import sys
from enum import Enum
from typing import IO, Iterable, NamedTuple, Union

from .errors import EmptyTraceError, ParseError
from .model import (
    EventLog,
    IrqBegin,
    IrqEnd,
    TaskSchedule,
    TraceEvent,
    format_timestamp,
)


class DiagnosticKind(Enum):
    MALFORMED_TIMESTAMP = "malformed_timestamp"
    UNKNOWN_EVENT = "unknown_event"
    MALFORMED_PAYLOAD = "malformed_payload"
    NON_MONOTONIC_TIMESTAMP = "non_monotonic_timestamp"


class ParseDiagnostic(NamedTuple):
    line: int
    kind: DiagnosticKind
    message: str


_EVENT_RE = re.compile(
    r"<(\d+)h[ \t]+(\d+)m[ \t]+(\d+)s[ \t]+(\d+)[ \t]+(\d+)>[ \t]+"
    r"(?:Task[ \t]+schedule:[ \t]+old[ \t]+(\d+)[ \t]+new[ \t]+(\d+)"
    r"|IRQ[ \t]+begin:[ \t]+(\d+)"
    r"|IRQ[ \t]+end:[ \t]+(\d+))$"
)

# Used only to classify lines the event regex rejected.
_BRACKET_RE = re.compile(r"<([^>]*)>[ \t]*(.*)$")
_TS_FIELDS_RE = re.compile(r"(\d+)h[ \t]+(\d+)m[ \t]+(\d+)s[ \t]+(\d+)[ \t]+(\d+)$")
_PAYLOAD_HEAD_RE = re.compile(r"(?:Task[ \t]+schedule:|IRQ[ \t]+(?:begin|end):)")


def _diagnose(text: str) -> tuple[DiagnosticKind, str]:
    """Classify a line that failed the event grammar."""
    m = _BRACKET_RE.match(text)
    if m is None:
        return DiagnosticKind.UNKNOWN_EVENT, f"unrecognized line: {text[:60]!r}"
    fields = _TS_FIELDS_RE.match(m.group(1).strip(" \t"))
    if fields is None:
        return (
            DiagnosticKind.MALFORMED_TIMESTAMP,
            f"malformed timestamp: {m.group(1)!r}",
        )
    _, minutes, seconds, ms, us = (int(g) for g in fields.groups())
    if minutes >= 60 or seconds >= 60 or ms >= 1000 or us >= 1000:
        return (
            DiagnosticKind.MALFORMED_TIMESTAMP,
            f"timestamp field out of range: {m.group(1)!r}",
        )
    rest = m.group(2)
    if _PAYLOAD_HEAD_RE.match(rest):
        return DiagnosticKind.MALFORMED_PAYLOAD, f"malformed event payload: {rest[:60]!r}"
    return DiagnosticKind.UNKNOWN_EVENT, f"unknown event type: {rest[:60]!r}"


def parse_line(text: str) -> TraceEvent:
    """Parse one trace line (without its newline) into an event.

    Raises ParseError carrying a DiagnosticKind when the line is not a valid
    event.
    """
    text = text.strip(" \t\r\n")
    m = _EVENT_RE.match(text)
    if m is None:
        kind, message = _diagnose(text)
        raise ParseError(kind, message)
    g = m.groups()
    minutes = int(g[1])
    seconds = int(g[2])
    ms = int(g[3])
    us = int(g[4])
    if minutes >= 60 or seconds >= 60 or ms >= 1000 or us >= 1000:
        raise ParseError(
            DiagnosticKind.MALFORMED_TIMESTAMP,
            f"timestamp field out of range in {text[:40]!r}",
        )
    at = (int(g[0]) * 3600 + minutes * 60 + seconds) * 1_000_000 + ms * 1000 + us
    if g[5] is not None:
        return TaskSchedule(at, int(g[5]), int(g[6]))
    if g[7] is not None:
        return IrqBegin(at, int(g[7]))
    return IrqEnd(at, int(g[8]))


def _iter_lines(source: Union[str, bytes, IO, Iterable[str]]) -> Iterable[str]:
    if isinstance(source, bytes):
        return source.decode("utf-8-sig").splitlines()
    if isinstance(source, str):
        return source.splitlines()
    return source


def parse_trace(source, strict: bool = True) -> EventLog:
    """Parse a whole trace into an EventLog.

    `source` may be text, bytes, or an iterable of lines (e.g. an open file).
    Blank lines are skipped.  Strict mode raises ParseError (with the line
    number) on the first bad line or backwards timestamp; lenient mode skips
    each offender and records a diagnostic instead.  A trace yielding zero
    events raises EmptyTraceError in both modes.
    """
    events: list[TraceEvent] = []
    diagnostics: list[ParseDiagnostic] = []
    append = events.append
    match = _EVENT_RE.match
    last_at = -1
    # adjacent lines usually share the h/m/s/ms prefix; cache its value
    prefix_key = None
    prefix_base = 0
    for lineno, raw in enumerate(_iter_lines(source), 1):
        text = raw.strip(" \t\r\n")
        if not text:
            continue
        # inlined happy path of parse_line; big traces make the extra call
        # and second strip noticeable
        m = match(text)
        if m is not None:
            g = m.groups()
            key = g[:4]
            if key != prefix_key:
                minutes = int(g[1])
                seconds = int(g[2])
                ms = int(g[3])
                if minutes >= 60 or seconds >= 60 or ms >= 1000:
                    ev = None
                    key = None
                else:
                    prefix_base = (
                        (int(g[0]) * 3600 + minutes * 60 + seconds) * 1_000_000
                        + ms * 1000
                    )
                prefix_key = key
            if prefix_key is not None:
                us = int(g[4])
                if us < 1000:
                    at = prefix_base + us
                    if g[5] is not None:
                        ev = TaskSchedule(at, int(g[5]), int(g[6]))
                    elif g[7] is not None:
                        ev = IrqBegin(at, int(g[7]))
                    else:
                        ev = IrqEnd(at, int(g[8]))
                else:
                    ev = None
        else:
            ev = None
        if ev is None:
            # reproduce the precise diagnostic for the bad line
            try:
                ev = parse_line(text)
            except ParseError as exc:
                if strict:
                    raise ParseError(exc.kind, exc.message, line=lineno) from None
                diagnostics.append(ParseDiagnostic(lineno, exc.kind, exc.message))
                continue
        if ev.at < last_at:
            message = f"timestamp goes backwards ({ev.at} us after {last_at} us)"
            if strict:
                raise ParseError(
                    DiagnosticKind.NON_MONOTONIC_TIMESTAMP, message, line=lineno
                )
            diagnostics.append(
                ParseDiagnostic(lineno, DiagnosticKind.NON_MONOTONIC_TIMESTAMP, message)
            )
            continue
        last_at = ev.at
        append(ev)
    if not events:
        raise EmptyTraceError("trace contains no events")
    return EventLog(events, diagnostics)


def parse_trace_file(path: str, strict: bool = True) -> EventLog:
    """Parse a trace from a file path, or from stdin when path is '-'."""
    if path == "-":
        return parse_trace(sys.stdin.buffer.read(), strict=strict)
    with open(path, "rb") as handle:
        return parse_trace(handle.read(), strict=strict)


def render_event(event: TraceEvent) -> str:
    """Render one event as a canonical trace line (no newline)."""
    ts = format_timestamp(event.at)
    kind = type(event)
    if kind is TaskSchedule:
        return f"<{ts}> Task schedule: old {event.old} new {event.new}"
    if kind is IrqBegin:
        return f"<{ts}> IRQ begin: {event.irq}"
    if kind is IrqEnd:
        return f"<{ts}> IRQ end: {event.irq}"
    raise TypeError(f"not a trace event: {event!r}")


def render_trace(events: Iterable[TraceEvent]) -> str:
    """Render events as canonical trace text, one line each, LF-terminated."""
    lines = [render_event(ev) for ev in events]
    lines.append("")
    return "\n".join(lines)
