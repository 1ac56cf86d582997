from pathlib import Path

import pytest

from smti_asp.model import Matching, PreferenceList, SmtiInstance

GOLDEN = Path(__file__).parent / "golden"

_results: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, label = marker.args
    detail = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
    if report.when == "call" or (report.when == "setup" and not report.passed):
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        previous = _results.get(number)
        if previous is None or previous[0] == "PASS":
            _results[number] = (status, label, detail)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        status, label, detail = _results[number]
        tail = f"  ({detail})" if detail else ""
        terminalreporter.write_line(f"{status} {number:>2}. {label}{tail}")


@pytest.fixture
def example3() -> SmtiInstance:
    return SmtiInstance(
        [PreferenceList.of([1], [2, 3], []), PreferenceList.of([2], [1])],
        [PreferenceList.of([1, 2], []), PreferenceList.of([1], []), PreferenceList.of([2], [1], [])],
    )


@pytest.fixture
def example3_matchings() -> dict[str, Matching]:
    """The three weakly stable matchings listed for the instance, by name."""
    return {
        "S1": Matching.from_couples(2, 3, [(1, 3), (2, 1)]),
        "S2": Matching.from_couples(2, 3, [(1, 2), (2, 1)]),
        "S3": Matching.from_couples(2, 3, [(1, 1)]),
    }
