"""Collects the one-line acceptance verdicts and prints them at the end of the run."""

_lines: list[str] = []


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    for key, value in report.user_properties:
        if key == "acceptance":
            _lines.append(value)


def pytest_terminal_summary(terminalreporter):
    if not _lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_lines, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
