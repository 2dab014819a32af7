import numpy as np
import pytest

from quadbloch import BoundState, TwoLevelParams


@pytest.fixture
def rng():
    return np.random.default_rng(20250810)


@pytest.fixture(scope="session")
def states_n_le_4():
    return [
        BoundState(n, l, m)
        for n in range(1, 5)
        for l in range(n)
        for m in range(-l, l + 1)
    ]


@pytest.fixture
def canonical_params():
    """q = 0.1, omega21 = 1, tau = 0.01, lam = 0.05."""
    return TwoLevelParams(omega21=1.0, gamma11=0.02, gamma22=0.0, gamma12=-0.04, a12=0.2)
