import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES: list[str] = []
REPORT_PATH = Path(__file__).resolve().parent.parent / "acceptance_report.txt"


@pytest.fixture
def record():
    """Append one acceptance line; the test still asserts on its own."""

    def _record(number: int, title: str, ok: bool, detail: str) -> bool:
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}")
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    lines = sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split(".")[0].split("]")[1]))
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
    REPORT_PATH.write_text("\n".join(lines) + "\n", encoding="utf-8")
