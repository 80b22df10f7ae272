from __future__ import annotations

from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parents[1]
GOT_CSV = REPO_ROOT / "data" / "stormofswords.csv"

_acceptance_lines: list[str] = []


def record_acceptance_line(line: str) -> None:
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def got_csv_text() -> str:
    return GOT_CSV.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def got_csv_path() -> Path:
    return GOT_CSV
