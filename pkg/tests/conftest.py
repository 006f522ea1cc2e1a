import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ALPHA_GRID = (-0.5, 0.0, 0.5, 2.0)

# one line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE_LINES = {}


@pytest.fixture(params=ALPHA_GRID, ids=lambda a: f"alpha={a}")
def alpha(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_disc(rng, size, r_min=0.0, r_max=0.9):
    r = rng.uniform(r_min, r_max, size)
    return r * np.exp(2j * np.pi * rng.uniform(size=size))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
