import numpy as np
import pytest

from spherecgm.cones import make_cone, orthant
from spherecgm.objectives import linear_objective, polygon_make

# One line per acceptance criterion, filled by test_acceptance.py.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def quadrant():
    return orthant()


@pytest.fixture
def unit_square():
    return polygon_make([[0, 0], [1, 0], [1, 1], [0, 1]])


@pytest.fixture
def neg_identity():
    return linear_objective(-np.eye(2), np.zeros(2))


def random_points(rng, n):
    x = rng.standard_normal((n, 3))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def random_tangents(rng, p, scale=1.0):
    v = rng.standard_normal(p.shape)
    v -= np.sum(v * p, axis=-1, keepdims=True) * p
    return scale * v


def random_cone(rng, lo=0.01, hi=np.pi - 0.01):
    phase = rng.uniform(0, 2 * np.pi)
    opening = rng.uniform(lo, hi)
    return make_cone([np.cos(phase), np.sin(phase)], [np.cos(phase + opening), np.sin(phase + opening)])
