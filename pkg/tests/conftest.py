import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from graphcontrol.census import enumerate_connected  # noqa: E402

_ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def connected_graphs(n):
    return tuple(enumerate_connected(n))


@pytest.fixture
def record():
    def _record(criterion: str, passed: bool, detail: str = ""):
        line = f"[{'PASS' if passed else 'FAIL'}] {criterion}" + (f": {detail}" if detail else "")
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
