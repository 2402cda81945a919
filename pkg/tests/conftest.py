import pytest

from crgeom import sampling


@pytest.fixture
def rng():
    return sampling.make_rng(2024)


@pytest.fixture
def rng_alt():
    return sampling.make_rng(777)
