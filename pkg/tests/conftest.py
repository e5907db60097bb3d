import pytest

from helpgen.context import QuestionPoint
from helpgen.delivery.core import answer_once
from helpgen.kb.bundle import load_bundle

from helpers import shipped_kb_path

_ACCEPTANCE_RESULTS: dict[str, str] = {}
_ACCEPTANCE_NOTES: dict[str, str] = {}


def record_acceptance_note(criterion: str, note: str):
    _ACCEPTANCE_NOTES[criterion] = note


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py::" not in report.nodeid:
        return
    _ACCEPTANCE_RESULTS[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE_RESULTS):
        outcome = _ACCEPTANCE_RESULTS[name]
        status = "PASS" if outcome == "passed" else "FAIL"
        note = _ACCEPTANCE_NOTES.get(name, "")
        terminalreporter.write_line(f"{status}  {name}" + (f"  ({note})" if note else ""))


@pytest.fixture(scope="session")
def ate():
    return load_bundle(shipped_kb_path("ate"))


@pytest.fixture(scope="session")
def bicycle():
    return load_bundle(shipped_kb_path("bicycle"))


@pytest.fixture
def ask(ate):
    def _ask(question, component, task="operations", model="skilled", focus=(), action=None):
        point = QuestionPoint(
            question=question,
            component=component,
            task=task,
            expertise=model,
            focus=tuple(focus),
            action=action,
        )
        return answer_once(point, ate)

    return _ask
