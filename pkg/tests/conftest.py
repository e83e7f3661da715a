import pytest
from hypothesis import HealthCheck, settings

from combfloer.io import FIXTURE_NAMES, fixture

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def fixtures():
    return {name: fixture(name) for name in FIXTURE_NAMES}


TORUS_FIXTURES = ("F_TORUS1", "F_TORUS2", "F_TORUS3", "F_TORUS4", "F_NEST")
