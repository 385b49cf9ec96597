import pytest
from hypothesis import HealthCheck, settings

from ncsets.gf import field_of_order

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def fields():
    return {q: field_of_order(q) for q in (2, 3, 4, 5, 7, 8, 9, 25)}


@pytest.fixture(params=[2, 3, 4, 5, 7, 9])
def F(request):
    return field_of_order(request.param)
