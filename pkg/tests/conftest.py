import pytest

ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def record():
    def _record(n: int, title: str, ok: bool, note: str = ""):
        ACCEPTANCE[n] = f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({note})" if note else "")
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
