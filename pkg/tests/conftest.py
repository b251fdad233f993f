from __future__ import annotations

import os
import sys
import time
from pathlib import Path

import pytest
from hypothesis import is_hypothesis_test, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

RUN_INDEX63 = os.environ.get("COSETGEOM_RUN_INDEX63") == "1"

PROPERTY_CRITERION = 9

_results: dict[int, list[tuple[str, str, str]]] = {}

# wall-clock seconds spent building each session fixture
TIMINGS: dict[str, float] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


def pytest_collection_modifyitems(items):
    # every hypothesis test counts towards the property-suite criterion
    for item in items:
        fn = getattr(item, "function", None)
        if fn is not None and is_hypothesis_test(fn) and item.get_closest_marker("criterion") is None:
            item.add_marker(pytest.mark.criterion(PROPERTY_CRITERION, f"property: {item.module.__name__}"))


@pytest.fixture
def acceptance_note(request):
    """Attach a line of text to this test's entry in the criteria summary."""
    def add(text: str) -> None:
        request.node.user_properties.append(("note", text))
    return add


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
        note = ""
        if rep.outcome == "skipped" and isinstance(rep.longrepr, tuple):
            note = rep.longrepr[2]
        extra = [v for k, v in item.user_properties if k == "note"]
        if extra:
            note = "; ".join(([note] if note else []) + extra)
        _results.setdefault(n, []).append((item.name, status, f"{title}{': ' + note if note else ''}"))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_results):
        parts = _results[n]
        statuses = {s for _, s, _ in parts}
        overall = "FAIL" if "FAIL" in statuses else ("PASS" if "PASS" in statuses else "SKIP")
        tr.write_line(f"criterion {n}: {overall}")
        for name, status, title in parts:
            tr.write_line(f"    {status}  {name}  ({title})")


# --- shared expensive results -------------------------------------------------

def _timed(name, fn):
    start = time.perf_counter()
    out = fn()
    TIMINGS[name] = time.perf_counter() - start
    return out


@pytest.fixture(scope="session")
def mermin():
    from cosetgeom.scenarios import mermin_square

    return _timed("mermin", mermin_square)


@pytest.fixture(scope="session")
def pg32():
    from cosetgeom.scenarios import pg32

    return _timed("pg32", pg32)


@pytest.fixture(scope="session")
def hexagon_results():
    from cosetgeom.scenarios import hexagons

    return _timed("hexagons", hexagons)


@pytest.fixture(scope="session")
def octahedron():
    from cosetgeom.scenarios import octahedron_dessin

    return octahedron_dessin()
