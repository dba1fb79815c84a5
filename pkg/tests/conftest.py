"""Shared test plumbing: collects acceptance-criterion verdicts and prints a
one-line-per-criterion summary at the end of the run."""

import pytest

ACCEPTANCE_RESULTS: list[tuple[str, bool, float, str]] = []


@pytest.fixture
def record_criterion():
    def _record(name: str, ok: bool, elapsed: float, detail: str = "") -> None:
        ACCEPTANCE_RESULTS.append((name, ok, elapsed, detail))

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, elapsed, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if ok else "FAIL"
        line = f"{status}  {name}  ({elapsed:.1f}s)"
        if detail:
            line += f"  {detail}"
        terminalreporter.write_line(line)
