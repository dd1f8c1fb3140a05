"""Shared fixtures.  The acceptance module reports one line per criterion
through :func:`acceptance_line`; the lines are repeated in the terminal
summary so they survive output capture."""

from __future__ import annotations

import pytest

_LINES: dict[int, str] = {}


def record_acceptance(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    _LINES[number] = line
    print(line)


@pytest.fixture
def acceptance_line():
    return record_acceptance


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_LINES):
        terminalreporter.write_line(_LINES[number])
