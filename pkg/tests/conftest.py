import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE = {}
_UNMET = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(ac_id, title): exit criterion from the build contract")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call":
        return
    ac_id, title = marker.args
    xfail = item.get_closest_marker("xfail")
    if xfail is not None:
        # a documented unattainable target, reported apart from the criterion
        _UNMET.append((ac_id, xfail.kwargs.get("reason", ""), call.excinfo is not None))
        return
    passed = call.excinfo is None
    prev = _ACCEPTANCE.get(ac_id, (title, True))
    _ACCEPTANCE[ac_id] = (title, prev[1] and passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for ac_id in sorted(_ACCEPTANCE, key=lambda s: int(s.split("-")[1])):
        title, ok = _ACCEPTANCE[ac_id]
        terminalreporter.write_line(f"{ac_id} {'PASS' if ok else 'FAIL'}  {title}")
    for ac_id, reason, still_failing in _UNMET:
        state = "TARGET UNMET" if still_failing else "TARGET NOW MET"
        terminalreporter.write_line(f"{ac_id} {state}  {reason}")


@pytest.fixture(scope="session")
def golden_tables():
    from fusiontypes.goldens import all_goldens

    return {t.dim: t for t in all_goldens()}
