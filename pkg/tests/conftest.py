import os

import numpy as np

import pytest

from hypothesis import HealthCheck, settings

settings.register_profile('witnesskit', max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile('ci', max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile('dev', max_examples=5, deadline=None)
settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE', 'witnesskit'))


def random_hermitian(rng, d):
    """Draw a random Hermitian matrix with standard complex gaussian entries.
    """

    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))

    return 0.5 * (a + a.conj().T)


@pytest.fixture
def rng():

    return np.random.default_rng(20240519)
