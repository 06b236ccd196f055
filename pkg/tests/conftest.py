import math

import numpy as np
import pytest
from hypothesis import settings

from cocyclelab.corpus import conformal, markov2, nullword, rot07

settings.register_profile("cocyclelab", deadline=None, max_examples=60)
settings.load_profile("cocyclelab")

LOG2 = math.log(2.0)


@pytest.fixture
def conformal_spec():
    return conformal()


@pytest.fixture
def rot_spec():
    return rot07()


@pytest.fixture
def null_spec():
    return nullword()


@pytest.fixture
def markov_spec():
    return markov2()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
