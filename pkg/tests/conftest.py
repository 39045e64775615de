import numpy as np
import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_normalized(rng, order=10, scale=1.0):
    """Normalized series with a_2..a_N drawn from the unit disk (times scale)."""
    from biunivalent.series import TruncatedSeries

    r = np.sqrt(rng.uniform(0, 1, order - 1)) * scale
    tail = r * np.exp(1j * rng.uniform(0, 2 * np.pi, order - 1))
    return TruncatedSeries(np.concatenate([[1.0], tail]))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    n, title = marker.args
    detail = dict(item.user_properties).get("detail", "")
    status = "PASS" if rep.passed else "FAIL"
    ACCEPTANCE_LINES.append(f"[{status}] criterion {n}: {title}" + (f" ({detail})" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
