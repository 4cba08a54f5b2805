import pytest
from hypothesis import HealthCheck, settings

from reeslab.poly import PolyRing

settings.register_profile("ci", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")


@pytest.fixture
def R2():
    return PolyRing(["x", "y"])


@pytest.fixture
def R3():
    return PolyRing(["x", "y", "z"])


@pytest.fixture
def R4():
    return PolyRing(["x", "y", "z", "w"])
