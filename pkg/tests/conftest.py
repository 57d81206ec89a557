import statistics
import time

import pytest

ACCEPTANCE_LINES = []


def rel_err(value, ref):
    if ref == 0.0:
        return abs(value)
    return abs(value - ref) / abs(ref)


def matches_digits(value, ref, digits):
    """True when value agrees with ref to at least ``digits`` significant digits."""
    return rel_err(value, ref) <= 0.5 * 10.0 ** (1 - digits)


@pytest.fixture
def report():
    def _report(number, title, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)




def _batch_time(func, arg, inner):
    t0 = time.perf_counter()
    for _ in range(inner):
        func(arg)
    return (time.perf_counter() - t0) / inner


def growth_ratio(func, small, large, rounds=9, budget=0.03, tries=3):
    """Ratio of per-call times of func(large) and func(small).

    Calls are batched so that each timed batch lasts about ``budget``
    seconds, the two sizes are timed alternately to cancel drift, and each
    side uses the median of ``rounds`` batches.  The estimate is repeated
    ``tries`` times and the smallest ratio is kept, which discards
    estimates spoiled by scheduler interference on a shared machine.
    """
    func(small)
    once = _batch_time(func, large, 1)
    inner_large = max(1, int(budget / max(once, 1e-7)))
    inner_small = max(1, int(inner_large * large.size / small.size))
    best = float("inf")
    for _ in range(tries):
        a, b = [], []
        for _ in range(rounds):
            a.append(_batch_time(func, small, inner_small))
            b.append(_batch_time(func, large, inner_large))
        best = min(best, statistics.median(b) / statistics.median(a))
    return best
