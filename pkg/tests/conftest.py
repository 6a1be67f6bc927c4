"""Shared extensions. Each one is re-checked against its axioms before any test uses it."""

from __future__ import annotations

import time
from contextlib import contextmanager

import pytest

from partialgalois import fixtures
from partialgalois.action import galois_extension, global_action, validate_partial_action
from partialgalois.group import FiniteGroup
from partialgalois.ring import build_ring, zmod


def _checked(pa):
    report = validate_partial_action(pa)
    assert report.ok, report.failures()
    return pa


@pytest.fixture(scope="session")
def pa_a():
    return _checked(fixtures.ex_a())


@pytest.fixture(scope="session")
def pa_b():
    return _checked(fixtures.ex_b())


@pytest.fixture(scope="session")
def pa_klein():
    return _checked(fixtures.klein_partial(5))


@pytest.fixture(scope="session")
def ext_a(pa_a):
    return galois_extension(pa_a)


@pytest.fixture(scope="session")
def ext_b(pa_b):
    return galois_extension(pa_b)


@pytest.fixture(scope="session")
def pa_f3_trivial():
    """C2 acting trivially on F3: not Galois, and H^2 has order 2."""
    ring = build_ring({"factors": [zmod(3)]})
    ident = {x: x for x in ring.elements()}
    return _checked(global_action(ring, FiniteGroup.cyclic(2), [ident, ident]))


@pytest.fixture(scope="session")
def gf4(pa_a):
    ring = pa_a.ring
    x = fixtures.ex_a_generator(ring)
    return ring, x, ring.mul(x, x)


# acceptance criteria: one pass/fail line each, printed after the run

_criteria: dict[int, tuple[str, str, float | None]] = {}
_suite_limit = 120.0


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, limit): a numbered acceptance criterion")
    config._suite_start = time.perf_counter()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call":
        return
    number, title = mark.args[:2]
    elapsed = getattr(item, "criterion_elapsed", None)
    _criteria[number] = ("PASS" if report.passed else "FAIL", title, elapsed)


@pytest.fixture
def timed(request):
    """Context manager timing the body; the elapsed time is checked against the criterion limit."""
    mark = request.node.get_closest_marker("criterion")
    limit = mark.kwargs["limit"]

    @contextmanager
    def run():
        start = time.perf_counter()
        yield
        request.node.criterion_elapsed = time.perf_counter() - start
        assert request.node.criterion_elapsed < limit, f"took {request.node.criterion_elapsed:.2f}s, limit {limit}s"

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title, elapsed = _criteria[number]
        took = f"{elapsed:.2f}s" if elapsed is not None else "-"
        tr.write_line(f"{status}  {number:>2}  {title}  [{took}]")
    total = time.perf_counter() - config._suite_start
    status = "PASS" if total < _suite_limit else "FAIL"
    tr.write_line(f"{status}  full suite under {_suite_limit:.0f}s  [{total:.2f}s]")


def pytest_sessionfinish(session, exitstatus):
    start = getattr(session.config, "_suite_start", None)
    if start is not None and _criteria and time.perf_counter() - start >= _suite_limit:
        session.exitstatus = 1
