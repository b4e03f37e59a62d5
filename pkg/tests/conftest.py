from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=25,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile("thorough", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("QCOIDEAL_HYPOTHESIS", "default"))

_CRITERIA: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        if hasattr(rep, "wasxfail"):
            status = "xfail" if rep.skipped else "XPASS"
        else:
            status = rep.outcome
        _CRITERIA.setdefault(n, []).append(status)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        st = _CRITERIA[n]
        passed = st.count("passed")
        xf = st.count("xfail")
        bad = len(st) - passed - xf
        if bad or not passed:
            verdict = "FAIL"
        else:
            verdict = "PARTIAL" if xf else "PASS"
        extra = " (%d strict xfail)" % xf if xf else ""
        tr.write_line("criterion %2d: %s  [%d passed%s, %d failed]" % (n, verdict, passed, extra, bad))
