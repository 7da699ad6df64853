import pytest
from hypothesis import HealthCheck, settings

from nodalspec.cli import parse_polynomial
from nodalspec.singular import parse_points

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

THREE_NODES = "x^2*y^2 + x^2*z^2 + y^2*z^2"
THREE_NODES_POINTS = "1:0:0\n0:1:0\n0:0:1"
FOUR_LINES = "x*y*z*(x+y+z)"
FOUR_LINES_POINTS = "0:0:1\n0:1:0\n1:0:0\n0:1:-1\n1:0:-1\n1:-1:0"
FERMAT = "x^4 + y^4 + z^4"


@pytest.fixture(scope="session")
def quartic_i():
    return parse_polynomial(THREE_NODES)


@pytest.fixture(scope="session")
def points_i():
    return parse_points(THREE_NODES_POINTS)


@pytest.fixture(scope="session")
def quartic_ii():
    return parse_polynomial(FOUR_LINES)


@pytest.fixture(scope="session")
def points_ii():
    return parse_points(FOUR_LINES_POINTS)


@pytest.fixture(scope="session")
def fermat():
    return parse_polynomial(FERMAT)
