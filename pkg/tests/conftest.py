import pytest

CRITERIA: dict[int, str] = {}


@pytest.fixture
def report():
    """Record one summary line per acceptance criterion."""

    def record(number: int, ok: bool, seconds: float, limit: float | None, detail: str = ""):
        status = "PASS" if ok else "FAIL"
        budget = f" (limit {limit:g} s)" if limit is not None else ""
        line = f"criterion {number:>2}: {status}  {seconds:6.2f} s{budget}"
        if detail:
            line += f"  {detail}"
        CRITERIA[number] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[n])
