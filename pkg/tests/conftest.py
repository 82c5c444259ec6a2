"""Shared fixtures; collects one summary line per acceptance criterion."""

import pytest

_ACCEPTANCE_LINES = {}
_NOTES = []


@pytest.fixture
def record_criterion():
    """Callback (number, title, passed, detail='') -> None; the collected
    lines are printed in a dedicated section at the end of the run."""

    def _record(number, title, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        line = f"[criterion {number:2d}] {status}  {title}"
        if detail:
            line += f"  -- {detail}"
        _ACCEPTANCE_LINES[number] = line

    return _record


@pytest.fixture
def record_note():
    """Free-form line for the acceptance summary (verdicts, measurements)."""

    def _note(text):
        _NOTES.append(text)

    return _note


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES and not _NOTES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(_ACCEPTANCE_LINES[number])
    for note in _NOTES:
        terminalreporter.write_line(note)
