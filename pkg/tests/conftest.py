from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from treelike import FiniteMetricSpace

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def space(labels, rows):
    return FiniteMetricSpace(labels, [[Fraction(v) for v in r] for r in rows])


@pytest.fixture
def path_metric():
    return space("abc", [[0, 1, 3], [1, 0, 2], [3, 2, 0]])


@pytest.fixture
def cycle4():
    # unit 4-cycle 1-2-3-4-1
    return space("1234", [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]])


@pytest.fixture
def k3():
    return space("xyz", [[0, 1, 1], [1, 0, 1], [1, 1, 0]])


@pytest.fixture
def star3():
    # three leaves of a star, centre omitted
    return space("xyz", [[0, 3, 5], [3, 0, 6], [5, 6, 0]])


@pytest.fixture
def star4():
    # the same star with its centre c
    return space("cxyz", [[0, 1, 2, 4], [1, 0, 3, 5], [2, 3, 0, 6], [4, 5, 6, 0]])
