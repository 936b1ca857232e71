import pytest

from dirac_hulthen import PotentialParams, QuantumNumbers


@pytest.fixture
def params_q1() -> PotentialParams:
    return PotentialParams(mu=50.0, v0=0.7, a=1.0, q=1.0)


@pytest.fixture
def params_q15() -> PotentialParams:
    return PotentialParams(mu=50.0, v0=0.7, a=1.0, q=1.5)


@pytest.fixture
def channel_km1(params_q15) -> QuantumNumbers:
    return QuantumNumbers.for_channel(-1, 1, params_q15)
