import math
import sys

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from cptlab.model import SystemParams

settings.register_profile("cptlab", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("cptlab")

rates = st.floats(0.1, 50.0)
rabi = st.floats(0.1, 100.0)
phases = st.floats(-math.pi, math.pi)
detunings = st.floats(-100.0, 100.0)
tau2s = st.floats(0.1, 1e4)


@st.composite
def system_params(draw, resonant=False):
    return SystemParams(
        gamma=draw(rates),
        omega1=draw(rabi),
        omega2=draw(rabi),
        phi1=draw(phases),
        phi2=draw(phases),
        delta1=0.0 if resonant else draw(detunings),
        delta2=0.0 if resonant else draw(detunings),
        gamma_e=draw(st.floats(0.5, 2.0)),
    )


def random_params(rng, resonant=False):
    return SystemParams(
        gamma=rng.uniform(0.1, 50),
        omega1=rng.uniform(0.1, 100),
        omega2=rng.uniform(0.1, 100),
        phi1=rng.uniform(-math.pi, math.pi),
        phi2=rng.uniform(-math.pi, math.pi),
        delta1=0.0 if resonant else rng.uniform(-100, 100),
        delta2=0.0 if resonant else rng.uniform(-100, 100),
        gamma_e=rng.uniform(0.5, 2.0),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def fig3_params():
    return SystemParams(gamma=7.0, omega1=46.0, omega2=46.0)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
