import random

import pytest
from hypothesis import strategies as st

from stardyn import fixtures
from stardyn.samplers import random_multimatrix_system, random_partial_map


@pytest.fixture(scope="session")
def systems():
    return fixtures.load_all()


@pytest.fixture(scope="session")
def merge(systems):
    return systems["S_merge"]


@pytest.fixture(scope="session")
def shift3(systems):
    return systems["S_shift3"]


@pytest.fixture(scope="session")
def const3(systems):
    return systems["S_const3"]


@pytest.fixture(scope="session")
def ident(systems):
    return systems["S_id"]


def fn(system, *values):
    """Commutative element from point values."""
    return system.algebra.element(list(values))


def pointwise_delta(m, values):
    """Oracle for the induced endomorphism: a(alpha(x)) on the domain, 0 off it."""
    return [values[m.images[x]] if m.images[x] is not None else 0 for x in m.points]


seeds = st.integers(min_value=0, max_value=2**32 - 1)


def map_from(seed, max_points=6):
    return random_partial_map(random.Random(seed), max_points)


def multimatrix_from(seed):
    return random_multimatrix_system(random.Random(seed))
