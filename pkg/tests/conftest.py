import math

import pytest

from convexgap.convex_core import Interval, exponential, square
from convexgap.harness import function_pool

POOL_SEED = 20261019


@pytest.fixture(scope="session")
def pool():
    """200 generated convex functions on random intervals."""
    return function_pool(200, POOL_SEED)


@pytest.fixture
def sq01():
    return square(Interval(0.0, 1.0))


@pytest.fixture
def exp01():
    return exponential(Interval(0.0, 1.0))


E = math.e
