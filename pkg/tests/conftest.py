import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile(
    "thorough", max_examples=400, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def random_hermitian(rng, n, scale=1.0):
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (G + G.conj().T) / 2


def random_symmetric(rng, n, rank=None):
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    if rank is None or rank >= n:
        return (G + G.T) / 2
    U = G[:, :rank]
    return U @ np.diag(rng.uniform(0.5, 2.0, rank)) @ U.T


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
