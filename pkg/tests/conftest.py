import pytest

from tlengine.params import CycleParams


@pytest.fixture
def params():
    """Default parameter set, strong-pulse limit."""
    return CycleParams()


@pytest.fixture
def finite_params():
    return CycleParams(pulse_mode="finite")
