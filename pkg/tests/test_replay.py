"""Charge accounting: slices, runs, nesting, recovery from bad traces."""

import pytest

from schedtrace import (
    ConsistencyError,
    Entity,
    ExecutionSlice,
    IrqBegin,
    IrqEnd,
    Run,
    TaskSchedule,
    ViolationKind,
    build_slices,
    generate_trace,
    parse_trace,
    random_scenario,
    validate_consistency,
)
from tests.conftest import SHORT_END, SHORT_NETS, SHORT_SPAN, SHORT_START
from tests.oracles import charge_by_microsecond


def test_window_is_first_to_last_event(short_slices):
    assert short_slices.window.start == SHORT_START
    assert short_slices.window.end == SHORT_END
    assert short_slices.window.duration_us == SHORT_SPAN


def test_net_times_match_hand_derivation(short_slices):
    assert short_slices.net_times() == SHORT_NETS


def test_net_times_conserve_window(short_slices):
    assert sum(short_slices.net_times().values()) == SHORT_SPAN


def test_slices_tile_window_exactly(short_slices):
    cur = short_slices.window.start
    for sl in short_slices.slices:
        assert sl.start == cur
        assert sl.end > sl.start
        cur = sl.end
    assert cur == short_slices.window.end


def test_slice_sequence(short_slices):
    t = Entity.task
    q = Entity.irq
    assert short_slices.slices == [
        ExecutionSlice(t(3), 1_290_602, 1_290_678),
        ExecutionSlice(t(1), 1_290_678, 1_290_764),
        ExecutionSlice(t(4), 1_290_764, 1_290_838),
        ExecutionSlice(q(16), 1_290_838, 1_290_861),
        ExecutionSlice(t(4), 1_290_861, 1_290_922),
        ExecutionSlice(t(2), 1_290_922, 1_291_015),
        ExecutionSlice(t(5), 1_291_015, 1_291_091),
        ExecutionSlice(q(23), 1_291_091, 1_291_124),
        ExecutionSlice(t(5), 1_291_124, 1_291_230),
    ]


def test_one_dispatch_per_task_with_net_of_irq_time(short_slices):
    runs = short_slices.task_runs
    assert runs[4] == [Run(1_290_764, 1_290_922, 135)]
    assert runs[5] == [Run(1_291_015, 1_291_230, 182)]
    assert short_slices.irq_runs[16] == [Run(1_290_838, 1_290_861, 23)]


def test_schedule_ins_back_successive_periods(short_slices):
    # task 3 is scheduled in twice, 628 us apart; nobody else repeats
    ins = short_slices.schedule_ins
    assert ins[3] == [1_290_602, 1_291_230]
    assert all(len(v) == 1 for k, v in ins.items() if k != 3)


def test_initial_task_defaults_to_idle():
    log = parse_trace(
        "<0000h 00m 00s 000 010> IRQ begin: 4\n"
        "<0000h 00m 00s 000 014> IRQ end: 4\n"
        "<0000h 00m 00s 000 020> Task schedule: old 0 new 1\n"
    )
    s = build_slices(log)
    assert s.net_times() == {Entity.task(0): 6, Entity.irq(4): 4}


def test_nested_irq_charged_to_inner_handler():
    log = parse_trace(
        "<0000h 00m 00s 000 000> Task schedule: old 0 new 1\n"
        "<0000h 00m 00s 000 010> IRQ begin: 7\n"
        "<0000h 00m 00s 000 014> IRQ begin: 8\n"
        "<0000h 00m 00s 000 019> IRQ end: 8\n"
        "<0000h 00m 00s 000 030> IRQ end: 7\n"
        "<0000h 00m 00s 000 040> Task schedule: old 1 new 0\n"
    )
    s = build_slices(log)
    assert s.net_times() == {
        Entity.task(1): 20,
        Entity.irq(7): 15,  # 20 us span minus 5 us stolen by irq 8
        Entity.irq(8): 5,
    }
    # the outer invocation spans both, net of the inner
    assert s.irq_runs[7] == [Run(10, 30, 15)]


def test_self_switch_splits_dispatch_but_not_slice():
    log = parse_trace(
        "<0000h 00m 00s 000 000> Task schedule: old 0 new 9\n"
        "<0000h 00m 00s 000 025> Task schedule: old 9 new 9\n"
        "<0000h 00m 00s 000 060> Task schedule: old 9 new 0\n"
    )
    s = build_slices(log)
    assert s.task_runs[9] == [Run(0, 25, 25), Run(25, 60, 35)]
    assert s.slices == [ExecutionSlice(Entity.task(9), 0, 60)]
    assert s.schedule_ins[9] == [0, 25]


def test_zero_gross_dispatch_is_not_recorded():
    log = parse_trace(
        "<0000h 00m 00s 000 000> Task schedule: old 0 new 1\n"
        "<0000h 00m 00s 000 020> Task schedule: old 1 new 2\n"
        "<0000h 00m 00s 000 020> Task schedule: old 2 new 3\n"
        "<0000h 00m 00s 000 050> Task schedule: old 3 new 0\n"
    )
    s = build_slices(log)
    assert 2 not in s.task_runs
    # but the zero-width visit still counts as a schedule-in
    assert s.schedule_ins[2] == [20]
    assert sum(s.net_times().values()) == 50


def test_old_task_mismatch_strict_raises():
    log = parse_trace(
        "<0000h 00m 00s 000 000> Task schedule: old 0 new 1\n"
        "<0000h 00m 00s 000 020> Task schedule: old 5 new 2\n"
    )
    with pytest.raises(ConsistencyError) as exc:
        build_slices(log)
    assert exc.value.violation.kind == ViolationKind.OLD_TASK_MISMATCH
    assert exc.value.violation.at == 20


def test_old_task_mismatch_lenient_resyncs():
    log = parse_trace(
        "<0000h 00m 00s 000 000> Task schedule: old 0 new 1\n"
        "<0000h 00m 00s 000 020> Task schedule: old 5 new 2\n"
        "<0000h 00m 00s 000 050> Task schedule: old 2 new 0\n"
    )
    s = build_slices(log, strict=False)
    assert [v.kind for v in s.diagnostics] == [ViolationKind.OLD_TASK_MISMATCH]
    # charge up to the bad switch stays with the task we believed was running
    assert s.net_times() == {Entity.task(1): 20, Entity.task(2): 30}


def test_irq_end_without_begin_lenient_drops_event():
    log = parse_trace(
        "<0000h 00m 00s 000 000> Task schedule: old 0 new 1\n"
        "<0000h 00m 00s 000 020> IRQ end: 9\n"
        "<0000h 00m 00s 000 040> Task schedule: old 1 new 0\n"
    )
    with pytest.raises(ConsistencyError):
        build_slices(log)
    s = build_slices(log, strict=False)
    assert [v.kind for v in s.diagnostics] == [ViolationKind.IRQ_END_WITHOUT_BEGIN]
    assert s.net_times() == {Entity.task(1): 40}


def test_irq_end_id_mismatch_lenient_keeps_stack():
    log = parse_trace(
        "<0000h 00m 00s 000 000> Task schedule: old 0 new 1\n"
        "<0000h 00m 00s 000 010> IRQ begin: 7\n"
        "<0000h 00m 00s 000 020> IRQ end: 8\n"
        "<0000h 00m 00s 000 030> IRQ end: 7\n"
        "<0000h 00m 00s 000 040> Task schedule: old 1 new 0\n"
    )
    with pytest.raises(ConsistencyError):
        build_slices(log)
    s = build_slices(log, strict=False)
    assert [v.kind for v in s.diagnostics] == [ViolationKind.IRQ_END_ID_MISMATCH]
    assert s.net_times() == {Entity.task(1): 20, Entity.irq(7): 20}


def test_irq_open_at_trace_end_lenient_closes_it():
    log = parse_trace(
        "<0000h 00m 00s 000 000> Task schedule: old 0 new 1\n"
        "<0000h 00m 00s 000 030> IRQ begin: 7\n"
        "<0000h 00m 00s 000 050> Task schedule: old 1 new 0\n"
    )
    with pytest.raises(ConsistencyError):
        build_slices(log)
    s = build_slices(log, strict=False)
    assert [v.kind for v in s.diagnostics] == [ViolationKind.IRQ_OPEN_AT_TRACE_END]
    assert s.net_times() == {Entity.task(1): 30, Entity.irq(7): 20}
    assert s.irq_runs[7] == [Run(30, 50, 20)]


def test_validate_consistency_clean_trace(short_log):
    assert validate_consistency(short_log) == []


def test_validate_consistency_collects_all_violations():
    log = parse_trace(
        "<0000h 00m 00s 000 000> Task schedule: old 0 new 1\n"
        "<0000h 00m 00s 000 010> IRQ end: 9\n"
        "<0000h 00m 00s 000 020> Task schedule: old 5 new 2\n"
        "<0000h 00m 00s 000 030> IRQ begin: 7\n"
    )
    kinds = [v.kind for v in validate_consistency(log)]
    assert kinds == [
        ViolationKind.IRQ_END_WITHOUT_BEGIN,
        ViolationKind.OLD_TASK_MISMATCH,
        ViolationKind.IRQ_OPEN_AT_TRACE_END,
    ]


def test_validate_agrees_with_strict_build():
    # empty violation list if and only if the strict build goes through
    for seed in range(40):
        text, _ = generate_trace(random_scenario(seed))
        log = parse_trace(text)
        assert validate_consistency(log) == []
        build_slices(log)  # must not raise


def test_matches_per_microsecond_oracle_on_short_trace(short_log, short_slices):
    assert short_slices.net_times() == charge_by_microsecond(short_log.events)


def test_matches_per_microsecond_oracle_on_random_scenarios():
    for seed in range(25):
        text, _ = generate_trace(random_scenario(seed, n_runs=12, max_gross_us=200))
        log = parse_trace(text)
        assert build_slices(log).net_times() == charge_by_microsecond(log.events)
