"""Shared pytest wiring.

The acceptance tests record a one-line verdict per criterion; the hook below
prints those lines in the terminal summary so a full run ends with a compact
pass/fail scoreboard regardless of output capturing.
"""

import pytest

_criterion_lines: dict[int, str] = {}


def record_criterion(num: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    _criterion_lines[num] = f"criterion {num:2d}: {status} - {detail}"


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _criterion_lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for num in sorted(_criterion_lines):
            terminalreporter.write_line(_criterion_lines[num])
