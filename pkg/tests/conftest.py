import pytest

_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def record():
    """Record one acceptance line: record(criterion, passed, detail)."""

    def _record(name: str, passed: bool, detail: str) -> None:
        _ACCEPTANCE[name] = (bool(passed), detail)
        print(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[0].rstrip("."))):
        passed, detail = _ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
