import numpy as np
import pytest

from wolct import OlctParams, UniformGrid


def random_valid_params(rng, n, min_abs_b=0.5, with_offsets=True):
    """Draw n parameter sets satisfying a*d - b*c = 1 with |b| >= min_abs_b."""
    out = []
    while len(out) < n:
        a = rng.uniform(-2.0, 2.0)
        if abs(a) < 0.1:
            continue
        b = rng.choice([-1.0, 1.0]) * rng.uniform(min_abs_b, 3.0)
        c = rng.uniform(-2.0, 2.0)
        d = (1.0 + b * c) / a
        if abs(d) > 10.0:
            continue
        u0 = rng.uniform(-2.0, 2.0) if with_offsets else 0.0
        w0 = rng.uniform(-2.0, 2.0) if with_offsets else 0.0
        out.append(OlctParams(a, b, c, d, u0, w0))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


@pytest.fixture
def grid1025():
    """Symmetric odd-count grid spanning [-12.8, 12.8] with step 0.025."""
    return UniformGrid.symmetric(0.025, 1025)


@pytest.fixture
def grid513():
    """Symmetric odd-count grid spanning [-12.8, 12.8] with step 0.05."""
    return UniformGrid.symmetric(0.05, 513)
