"""Independent re-implementations used to cross-check the analyzer.

These deliberately take the dumbest correct approach -- walk every single
microsecond of the window and ask "who owns this one?" -- so they share no
code or structure with the production interval arithmetic.  Only usable on
small windows.
"""

from collections import Counter

from schedtrace import Entity, IrqBegin, IrqEnd, TaskSchedule
from schedtrace.model import IDLE_TASK_ID


def charge_by_microsecond(events) -> dict[Entity, int]:
    """Charge each microsecond of [first, last) to the innermost context.

    Events taking effect at time t own the charge for [t, t+1).  Assumes a
    consistent trace (balanced IRQ nesting, truthful old-task fields).
    """
    if not events:
        return {}
    start = events[0].at
    end = events[-1].at
    current = events[0].old if isinstance(events[0], TaskSchedule) else IDLE_TASK_ID
    stack: list[int] = []
    net: Counter = Counter()
    i = 0
    for t in range(start, end):
        while i < len(events) and events[i].at == t:
            ev = events[i]
            if isinstance(ev, TaskSchedule):
                current = ev.new
            elif isinstance(ev, IrqBegin):
                stack.append(ev.irq)
            elif isinstance(ev, IrqEnd):
                stack.pop()
            i += 1
        if stack:
            net[Entity.irq(stack[-1])] += 1
        else:
            net[Entity.task(current)] += 1
    return dict(net)
