import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from epwlab import k3, lagrangian
from epwlab.exactnum import SeededRng

settings.register_profile("default", max_examples=30, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

GOLDEN = Path(__file__).parent / "golden"


def load_golden(name):
    return json.loads((GOLDEN / name).read_text())


@pytest.fixture(scope="session")
def delta_instance():
    """(A, DeltaCertificate) with a corank-3 point at e0."""
    return lagrangian.build_delta_lagrangian(SeededRng(3))


@pytest.fixture(scope="session")
def delta_k3(delta_instance):
    A, cert = delta_instance
    return k3.k3_data(A, cert.D)


@pytest.fixture(scope="session")
def random_A():
    return lagrangian.random_lagrangian(SeededRng(42))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS, summary_line
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(summary_line(*RESULTS[n]))
