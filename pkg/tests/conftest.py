"""Shared fixtures: a small hand-checked trace and its derived facts."""

import pytest

from schedtrace import Entity, EventLog, SliceSet, build_slices, parse_trace

# Ten events spanning 628 us, with one IRQ landing inside task 4 and one
# inside task 5.  All expected numbers below are worked out by hand from
# the timestamps: an IRQ window is charged to the handler, not to the
# task it interrupts, so task 4 nets 135 us out of a 158 us dispatch.
SHORT_TRACE = """\
<0000h 00m 01s 290 602> Task schedule: old 5 new 3
<0000h 00m 01s 290 678> Task schedule: old 3 new 1
<0000h 00m 01s 290 764> Task schedule: old 1 new 4
<0000h 00m 01s 290 838> IRQ begin: 16
<0000h 00m 01s 290 861> IRQ end: 16
<0000h 00m 01s 290 922> Task schedule: old 4 new 2
<0000h 00m 01s 291 015> Task schedule: old 2 new 5
<0000h 00m 01s 291 091> IRQ begin: 23
<0000h 00m 01s 291 124> IRQ end: 23
<0000h 00m 01s 291 230> Task schedule: old 5 new 3
"""

SHORT_START = 1_290_602
SHORT_END = 1_291_230
SHORT_SPAN = 628

SHORT_NETS = {
    Entity.task(1): 86,
    Entity.task(2): 93,
    Entity.task(3): 76,
    Entity.task(4): 135,
    Entity.task(5): 182,
    Entity.irq(16): 23,
    Entity.irq(23): 33,
}


@pytest.fixture(scope="session")
def short_log() -> EventLog:
    return parse_trace(SHORT_TRACE)


@pytest.fixture(scope="session")
def short_slices(short_log) -> SliceSet:
    return build_slices(short_log)
