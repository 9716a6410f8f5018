"""Command line interface: analyze traces, generate scenarios, validate logs.

Exit codes: 0 success, 1 parse or trace error, 2 consistency violation in
strict mode, 3 usage error.
"""

from __future__ import annotations

import argparse
import gc
import os
import sys
from dataclasses import dataclass

from .errors import ConsistencyError, ScriptError, TraceError
from .model import Window
from .replay import build_slices, validate_consistency
from .reports import (
    CSV,
    FORMATS,
    TEXT,
    average_load,
    render,
    render_stats_histograms_csv,
    task_statistics,
    timeline,
    utilization,
)
from .synthgen import Scenario, generate_trace, manifest_csv, parse_script
from .tracefile import parse_trace_file

EXIT_OK = 0
EXIT_TRACE_ERROR = 1
EXIT_CONSISTENCY = 2
EXIT_USAGE = 3

REPORT_NAMES = ("load", "utilization", "stats", "timeline")
_EXTENSIONS = {"text": "txt", "csv": "csv", "json": "json"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we map usage errors to 3
        raise _UsageError(message)


@dataclass
class RunConfig:
    """Options shared by one analyze invocation."""

    reports: list[str]
    slot_width_us: int
    zoom: tuple[int | None, int | None]
    bins: int
    strict: bool
    fmt: str
    output_dir: str | None


def _build_parser() -> _Parser:
    parser = _Parser(prog="schedtrace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="compute reports from trace files")
    analyze.add_argument("traces", nargs="+", metavar="TRACE", help="trace path or '-'")
    analyze.add_argument(
        "--report",
        action="append",
        dest="reports",
        choices=REPORT_NAMES,
        help="report to emit; repeatable",
    )
    analyze.add_argument(
        "--slot-width-us",
        type=int,
        default=100_000,
        help="utilization slot width in microseconds (default 100000)",
    )
    analyze.add_argument(
        "--from-us", type=int, dest="from_us", help="zoom start, absolute trace us"
    )
    analyze.add_argument(
        "--to-us", type=int, dest="to_us", help="zoom end, absolute trace us"
    )
    analyze.add_argument(
        "--bins", type=int, default=20, help="histogram bin count (default 20)"
    )
    analyze.add_argument(
        "--lenient",
        action="store_true",
        help="skip bad lines and repair inconsistent events instead of failing",
    )
    analyze.add_argument("--format", choices=FORMATS, default=TEXT)
    analyze.add_argument("-o", "--output-dir", help="write one file per report here")

    generate = sub.add_parser("generate", help="emit a trace from a scenario script")
    generate.add_argument("script", metavar="SCRIPT", help="scenario script or '-'")
    generate.add_argument(
        "--start-us", type=int, default=0, help="timestamp of the first event"
    )
    generate.add_argument(
        "--prior-task", type=int, default=0, help="old task of the first switch"
    )
    generate.add_argument(
        "--final-task", type=int, default=0, help="new task of the terminal switch"
    )
    generate.add_argument(
        "-o", "--output-dir", help="write trace.txt and manifest.csv here"
    )

    validate = sub.add_parser("validate", help="check a trace for consistency")
    validate.add_argument("trace", metavar="TRACE", help="trace path or '-'")
    validate.add_argument(
        "--lenient", action="store_true", help="tolerate unparseable lines"
    )
    return parser


def _stem(path: str) -> str:
    if path == "-":
        return "stdin"
    base = os.path.basename(path)
    dot = base.rfind(".")
    return base[:dot] if dot > 0 else base


def _write(directory: str, name: str, content: str):
    os.makedirs(directory, exist_ok=True)
    with open(os.path.join(directory, name), "wb") as handle:
        handle.write(content.encode("utf-8"))


def _compute(name: str, sliceset, cfg: RunConfig):
    if name == "load":
        return average_load(sliceset)
    if name == "utilization":
        return utilization(sliceset, cfg.slot_width_us, _view(cfg, sliceset))
    if name == "stats":
        return task_statistics(sliceset, cfg.bins)
    return timeline(sliceset, _view(cfg, sliceset))


def _view(cfg: RunConfig, sliceset):
    lo, hi = cfg.zoom
    if lo is None and hi is None:
        return None
    return Window(
        sliceset.window.start if lo is None else lo,
        sliceset.window.end if hi is None else hi,
    )


def _cmd_analyze(ns) -> int:
    reports = list(dict.fromkeys(ns.reports or ()))
    if not reports:
        raise _UsageError("select at least one --report")
    reports.sort(key=REPORT_NAMES.index)
    if ns.slot_width_us < 1:
        raise _UsageError("--slot-width-us must be at least 1")
    if ns.bins < 1:
        raise _UsageError("--bins must be at least 1")
    if ns.from_us is not None and ns.to_us is not None and ns.from_us >= ns.to_us:
        raise _UsageError("--from-us must be smaller than --to-us")
    if len(ns.traces) > 1 and not ns.output_dir:
        raise _UsageError("multiple traces need an output directory (-o)")
    cfg = RunConfig(
        reports=reports,
        slot_width_us=ns.slot_width_us,
        zoom=(ns.from_us, ns.to_us),
        bins=ns.bins,
        strict=not ns.lenient,
        fmt=ns.format,
        output_dir=ns.output_dir,
    )
    multi = len(ns.traces) > 1
    first_doc = True
    for path in ns.traces:
        log = parse_trace_file(path, strict=cfg.strict)
        sliceset = build_slices(log, strict=cfg.strict)
        for name in cfg.reports:
            report = _compute(name, sliceset, cfg)
            rendered = render(report, cfg.fmt)
            if cfg.output_dir:
                directory = cfg.output_dir
                if multi:
                    directory = os.path.join(directory, _stem(path))
                _write(directory, f"{name}.{_EXTENSIONS[cfg.fmt]}", rendered)
                if name == "stats" and cfg.fmt == CSV:
                    _write(
                        directory,
                        "stats_histograms.csv",
                        render_stats_histograms_csv(report),
                    )
            else:
                if not first_doc:
                    sys.stdout.write("\n")
                sys.stdout.write(rendered)
                first_doc = False
    return EXIT_OK


def _cmd_generate(ns) -> int:
    if ns.script == "-":
        text = sys.stdin.buffer.read().decode("utf-8")
    else:
        with open(ns.script, "rb") as handle:
            text = handle.read().decode("utf-8")
    scenario = parse_script(text)
    if ns.start_us:
        scenario = Scenario(ns.start_us, scenario.runs)
    trace_text, manifest = generate_trace(
        scenario, prior_task=ns.prior_task, final_task=ns.final_task
    )
    if ns.output_dir:
        _write(ns.output_dir, "trace.txt", trace_text)
        _write(ns.output_dir, "manifest.csv", manifest_csv(manifest))
    else:
        sys.stdout.write(trace_text)
    return EXIT_OK


def _cmd_validate(ns) -> int:
    log = parse_trace_file(ns.trace, strict=not ns.lenient)
    for diagnostic in log.diagnostics:
        print(
            f"warning: line {diagnostic.line}: {diagnostic.kind.value}:"
            f" {diagnostic.message}",
            file=sys.stderr,
        )
    violations = validate_consistency(log)
    for violation in violations:
        print(f"at {violation.at} us: {violation.kind.value}: {violation.detail}")
    if violations:
        return EXIT_CONSISTENCY
    print("no consistency violations")
    return EXIT_OK


def run(argv=None) -> int:
    """Entry point returning an exit code instead of raising SystemExit."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help and friends
        return int(exc.code or 0)
    # one-shot batch process allocating millions of acyclic tuples; the
    # cycle collector only adds rescan pauses here
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        if ns.command == "analyze":
            return _cmd_analyze(ns)
        if ns.command == "generate":
            return _cmd_generate(ns)
        return _cmd_validate(ns)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except ScriptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRACE_ERROR
    except TraceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRACE_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRACE_ERROR
    finally:
        if gc_was_enabled:
            gc.enable()


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
