import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption(
        "--seed",
        type=int,
        default=20260809,
        help="base seed for the randomized agreement suites",
    )


@pytest.fixture
def base_seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(base_seed):
    return random.Random(base_seed)
