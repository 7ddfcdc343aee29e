from fractions import Fraction

import pytest
from hypothesis import settings

from crdeform.exact import CScalar, sqrt
from crdeform.geometry import HoloMap, Hypersurface, sphere
from crdeform.poly import MPoly

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def coords(n=2):
    """Holomorphic coordinates followed by their conjugates."""
    return [MPoly.variable(2 * n, j) for j in range(2 * n)]


def quadratic_map():
    z, w, _, _ = coords()
    return HoloMap(2, (z * z, sqrt(2) * z * w, w * w))


def cubic_map():
    z, w, _, _ = coords()
    return HoloMap(2, (z**3, sqrt(3) * z * w, w**3))


def quartic_source():
    z, w, zb, wb = coords()
    rho = z * z * zb * zb + z * zb * w * w * wb * wb + w * wb - 1
    u = CScalar(Fraction(3, 5), Fraction(4, 5))
    i = CScalar(0, 1)
    pts = ((1, 0), (0, 1), (i, 0), (0, i), (u, 0), (0, u))
    return Hypersurface(2, rho, points=pts)


def quartic_source_map():
    z, w, _, _ = coords()
    return HoloMap(2, (z * z, z * w * w, w))


@pytest.fixture(scope="session")
def S2():
    return sphere(2)


@pytest.fixture(scope="session")
def S3():
    return sphere(3)


@pytest.fixture(scope="session")
def H1():
    return quadratic_map()


@pytest.fixture(scope="session")
def H2():
    return cubic_map()


@pytest.fixture(scope="session")
def M3():
    return quartic_source()


@pytest.fixture(scope="session")
def H3():
    return quartic_source_map()


@pytest.fixture(scope="session")
def ident():
    return HoloMap.identity(2)


# -- acceptance summary ---------------------------------------------------------

_CRITERIA: dict[int, tuple[str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, title = marker
    _CRITERIA.setdefault(number, (title, []))[1].append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        rep.criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, outcomes = _CRITERIA[number]
        ok = outcomes and all(o == "passed" for o in outcomes)
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
