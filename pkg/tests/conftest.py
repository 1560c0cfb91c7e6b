import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from hilbcover.instances import random_body, random_pair, random_point

settings.register_profile("default", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**20)


@st.composite
def bodies(draw, dim=2):
    return random_body(draw(seeds), dim)


@st.composite
def body_and_points(draw, dim=2, k=2):
    s = draw(seeds)
    K = random_body(s, dim)
    return K, [random_point(K, s * 31 + i) for i in range(k)]


@st.composite
def nested_pairs(draw, dim=2):
    return random_pair(draw(seeds), dim)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
