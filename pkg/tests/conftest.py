import pytest

from awskein.skein import golden_system

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def system():
    return golden_system()


@pytest.fixture
def record():
    """Record one acceptance line; it is echoed now and again in the terminal summary."""

    def _record(criterion: str, ok: bool, detail: str = "") -> None:
        line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
