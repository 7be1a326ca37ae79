import numpy as np
import pytest

from vortexmc import summation


@pytest.fixture(scope="session", autouse=True)
def _warm_numba():
    # compile the summation kernels once so timing-sensitive tests are clean
    summation.warmup()


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)
