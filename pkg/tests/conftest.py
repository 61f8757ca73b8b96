"""Shared pytest plumbing: the acceptance-criterion result board.

Each acceptance test reports its verdict through :func:`record_criterion`;
the lines are echoed immediately (visible with -s or on failure) and again
in the terminal summary, which pytest never captures.
"""

CRITERION_LINES: list[str] = []


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] acceptance criterion {number}: {detail}"
    CRITERION_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not CRITERION_LINES:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for line in CRITERION_LINES:
        terminalreporter.write_line(line)
