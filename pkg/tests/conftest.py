import math

import pytest

from semifourier import DEFAULT_QUADRATURE, SpectralConfig


@pytest.fixture
def cfg():
    """Reference interval (0, pi) with unit shift."""
    return SpectralConfig(0.0, math.pi, 1.0)


@pytest.fixture
def spec():
    return DEFAULT_QUADRATURE


@pytest.fixture(params=[
    (0.0, math.pi, 1.0),
    (0.0, 2.0 * math.pi, 0.5),
    (-1.0, 1.0, 3.0),
    (1.0, 1.0 + math.pi, 2.0),
])
def any_cfg(request):
    """Sweep over intervals with different lengths, offsets, and shifts."""
    a, b, k = request.param
    return SpectralConfig(a, b, k)
