from __future__ import annotations

import os
from collections import defaultdict
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from tracemine import log_from_sequences, read_xes

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile(
    "repro",
    max_examples=100,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repro"))

L1_SEQUENCES = [("a", "b", "d")] * 3 + [("a", "c", "d")] * 2

CRITERIA = {
    1: "L1 rediscovery with the alpha miner",
    2: "footprint against hand matrix and brute-force scanner",
    3: "replay deficits against hand values and exhaustive replayer",
    4: "inductive miner fitness guarantee and language equivalence",
    5: "heuristic dependency formula and antisymmetry",
    6: "metric ranges and determinism",
    7: "XES and PNML round-trips",
    8: "road-fines statistics reproduction",
    9: "road-fines evaluation matrix orderings",
}


@pytest.fixture
def l1():
    return log_from_sequences(L1_SEQUENCES)


@pytest.fixture
def l1_xes_path():
    return FIXTURES / "l1.xes"


@pytest.fixture
def l1_from_file():
    return read_xes(FIXTURES / "l1.xes")


_OUTCOMES: dict[int, list[str]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    if report.when == "call" or report.skipped or (report.when == "setup" and report.failed):
        _OUTCOMES[m.args[0]].append(report.outcome)


def pytest_terminal_summary(terminalreporter, config):
    results = _OUTCOMES
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        outcomes = results.get(n)
        if not outcomes:
            continue
        if "failed" in outcomes:
            verdict = "FAIL"
        elif all(o == "skipped" for o in outcomes):
            verdict = "SKIP"
        else:
            verdict = "PASS"
        passed = outcomes.count("passed")
        terminalreporter.write_line(
            f"criterion {n}: {verdict}  {title}  ({passed}/{len(outcomes)} checks passed)"
        )
