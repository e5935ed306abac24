from __future__ import annotations

import random
from pathlib import Path

import pytest

DATA = Path(__file__).resolve().parent.parent / "data"

_CRITERIA: list[tuple[str, bool, str]] = []


def record(label: str, ok: bool, detail: str = "") -> None:
    line = f"{label}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    _CRITERIA.append((label, ok, detail))
    print(line)


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        terminalreporter.write_line(f"{label}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
