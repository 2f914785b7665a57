import pytest

_CRITERIA: dict[int, tuple[str, bool]] = {}


@pytest.fixture
def criterion():
    """Record the outcome of one acceptance criterion and echo it."""

    def record(number: int, title: str, ok: bool) -> bool:
        _CRITERIA[number] = (title, ok)
        print(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}")
