import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bentforge.gf2m import field_new  # noqa: E402


@pytest.fixture(scope="session")
def F6():
    return field_new(6)


@pytest.fixture(scope="session")
def F8():
    return field_new(8)


@pytest.fixture(scope="session")
def F10():
    return field_new(10)


@pytest.fixture(scope="session")
def F12():
    return field_new(12)


_RESULTS = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for the acceptance summary, then return the verdict."""
    lines = request.config.stash.setdefault(_RESULTS, [])

    def record(label: str, ok: bool, detail: str = "") -> bool:
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_RESULTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
