import hypothesis
import pytest

from logwave import (
    ModelParams,
    QuadratureConfig,
    gaussian_data,
    thresholds_for,
)

hypothesis.settings.register_profile(
    "ci",
    derandomize=True,
    deadline=None,
    max_examples=60,
)
hypothesis.settings.load_profile("ci")


# Reference configuration used across the suite: n=3, theta=1, m=1, unit
# Gaussian velocity.  Thresholds are computed once; everything downstream
# is deterministic.
@pytest.fixture(scope="session")
def ref_params():
    return ModelParams(n=3, theta=1.0, m=1.0)


@pytest.fixture(scope="session")
def ref_thresholds(ref_params):
    return thresholds_for(ref_params)


@pytest.fixture(scope="session")
def ref_data():
    return gaussian_data(3, 1.0)


@pytest.fixture(scope="session")
def averaged_cfg():
    return QuadratureConfig(mode="averaged")


@pytest.fixture(scope="session")
def resolved_cfg():
    return QuadratureConfig(mode="resolved")
