from collections import OrderedDict

import pytest

# criterion -> list of (check, ok, detail), filled by the acceptance tests
ACCEPTANCE = OrderedDict()


@pytest.fixture
def record():
    def _record(criterion, check, ok, detail=""):
        ACCEPTANCE.setdefault(criterion, []).append((check, bool(ok), detail))
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[criterion]
        ok = all(c[1] for c in checks)
        failed = [f"{name} ({detail})" for name, good, detail in checks if not good]
        detail = "; ".join(failed) if failed else "; ".join(d for _, _, d in checks if d)
        terminalreporter.write_line(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")
