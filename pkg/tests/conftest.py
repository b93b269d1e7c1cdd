import pytest


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def announce(request):
    """Record a one-line PASS/FAIL verdict, echoed in the run summary."""
    lines = request.config._acceptance_lines

    def _announce(name: str, ok: bool, detail: str) -> None:
        line = f"{name}: {'PASS' if ok else 'FAIL'} ({detail})"
        print(line)
        lines.append(line)
        assert ok, f"{name}: {detail}"

    return _announce


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
