from hypothesis import HealthCheck, settings

settings.register_profile(
    "ssbath",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ssbath")

CRITERION_LINES = []


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERION_LINES, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
