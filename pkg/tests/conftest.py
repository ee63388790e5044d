"""Shared test plumbing: per-criterion verdict lines for the final summary."""

from contextlib import contextmanager

RESULTS = {}


@contextmanager
def criterion(num: int, text: str):
    """Record a one-line verdict for an acceptance requirement.

    The body runs the actual checks; any failure is re-raised so the
    test still fails normally, but the verdict line survives into the
    terminal summary either way.
    """
    try:
        yield
    except BaseException:
        RESULTS[num] = (False, text)
        raise
    RESULTS[num] = (True, text)


def note(num: int, extra: str) -> None:
    passed, text = RESULTS[num]
    RESULTS[num] = (passed, f"{text} {extra}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        passed, text = RESULTS[num]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{verdict} criterion {num}: {text}")
