from __future__ import annotations

import time

import pytest

_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Run a timed acceptance check and record one pass/fail line for it."""

    def run(number: int, title: str, budget: float, check, repeat: int = 1):
        best = float("inf")
        ok = False
        try:
            for _ in range(repeat):
                t0 = time.perf_counter()
                check()
                best = min(best, time.perf_counter() - t0)
            ok = best < budget
        finally:
            shown = "n/a" if best == float("inf") else f"{best:.4f} s"
            line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}  [{shown}, budget {budget} s]"
            _LINES.append(line)
            print(line)
        assert best < budget, f"criterion {number} took {best:.4f} s, budget {budget} s"

    return run


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
