import os
import sys

from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    REPORT = getattr(mod, "REPORT", None)
    if not REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(REPORT):
        terminalreporter.write_line(REPORT[key])
