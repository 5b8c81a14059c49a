import pytest

_acceptance_lines: list[str] = []


@pytest.fixture
def acceptance_record():
    """Collects one human-readable pass/fail line per acceptance criterion;
    the lines are printed in the terminal summary after the run."""

    def record(name: str, passed: bool, detail: str = "") -> None:
        status = "PASS" if passed else "FAIL"
        suffix = f"  ({detail})" if detail else ""
        _acceptance_lines.append(f"{name}: {status}{suffix}")

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
