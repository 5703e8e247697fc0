import time
import traceback

import pytest

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Run an acceptance check, print one PASS/FAIL line for it, then assert.

    The check returns ``ok`` or ``(ok, detail)``; an exception counts as FAIL.
    """
    def _run(number: int, title: str, check, budget: float | None = None):
        t0 = time.perf_counter()
        try:
            res = check()
            ok, detail = res if isinstance(res, tuple) else (res, "")
        except Exception as exc:  # reported, then re-raised through the assert below
            ok, detail = False, f"{type(exc).__name__}: {exc}"
            traceback.print_exc()
        elapsed = time.perf_counter() - t0
        if budget is not None and elapsed > budget:
            ok, detail = False, f"took {elapsed:.1f}s, budget {budget:.0f}s; {detail}".rstrip("; ")
        text = f"{title} [{elapsed:.1f}s]" + (f" ({detail})" if detail else "")
        ACCEPTANCE[number] = (bool(ok), text)
        print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {text}")
        assert ok, text
    return _run


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}")
