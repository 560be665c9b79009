from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from jonesurf.diagram import load_pd
from jonesurf.normal import load_triangulation

DATA = Path(__file__).resolve().parents[1] / "src" / "jonesurf" / "data"
KNOTS = DATA / "knots"
TRIS = DATA / "triangulations"

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def knot(name):
    return load_pd(KNOTS / f"{name}.pd")


@pytest.fixture(scope="session")
def solid_torus():
    return load_triangulation(TRIS / "solid_torus.tri")


@pytest.fixture(scope="session")
def demo_tri():
    return load_triangulation(TRIS / "demo.tri")


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
