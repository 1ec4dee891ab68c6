from collections import defaultdict

import pytest

from drumhead import LoadingParams, solve_spectrum

TITLES = {
    1: "uniform-membrane benchmark",
    2: "concentric loading, overtone-normalised spectrum",
    3: "optimum of Q over (sigma, k)",
    4: "eccentric loading, labelled spectrum (first overtone -> 1)",
    5: "eccentric loading, spectrum normalised by the fundamental",
    6: "degeneracy and its lifting",
    7: "eccentricity robustness",
    8: "property suite",
}

_outcomes = defaultdict(list)
_details = defaultdict(list)


@pytest.fixture
def measured(request):
    """Attach a short measurement note to the test's criterion summary line."""
    marker = request.node.get_closest_marker("criterion")

    def note(text):
        if marker is not None:
            _details[marker.args[0]].append(text)

    return note


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes[marker.args[0]].append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        results = _outcomes[number]
        failed = [name for name, outcome in results if outcome != "passed"]
        verdict = "FAIL" if failed else "PASS"
        detail = f" ({', '.join(failed)})" if failed else ""
        terminalreporter.write_line(
            f"criterion {number} [{verdict}] {TITLES.get(number, '')}: "
            f"{len(results) - len(failed)}/{len(results)} checks passed{detail}"
        )
        for text in _details.get(number, []):
            terminalreporter.write_line(f"    {text}")


TABLE1 = LoadingParams(3.125, 0.4, 0.091, 0.0)
TABLE2 = LoadingParams(3.125, 0.29, 0.091, 0.18)
TABLE3 = LoadingParams(3.125, 0.4, 0.091, 0.18)
OPTIMUM = LoadingParams(2.57, 0.492, 0.091, 0.0)


@pytest.fixture(scope="session")
def table1_report():
    return solve_spectrum(TABLE1, 65, 30, 25, "overtone2")


@pytest.fixture(scope="session")
def table2_report():
    return solve_spectrum(TABLE2, 65, 56, 12, "overtone1")


@pytest.fixture(scope="session")
def table3_report():
    return solve_spectrum(TABLE3, 65, 56, 10, "fundamental")
