"""Shared fixtures for the crossworld mediation tests."""

import numpy as np
import pytest

from src.models.config import ModelConfig, OutcomeKind
from src.models.counterfactuals import ObservedDataset

EXTREME_BINARY = [-3.5, 0.5, 2.5, -4.0, -1.0, 3.5, 3.25, 3.0, -5.0]

EIGHT_ROWS = [
    (0, 0, 0),
    (0, 0, 1),
    (0, 1, 1),
    (0, 1, 1),
    (1, 0, 1),
    (1, 0, 0),
    (1, 1, 1),
    (1, 1, 0),
]


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def binary_config() -> ModelConfig:
    """A binary model inside the default grid ranges."""
    return ModelConfig(
        outcome_kind=OutcomeKind.BINARY,
        alpha0=-0.85,
        alpha1=0.4,
        alpha2=-1.2,
        beta0=-0.4,
        beta1=0.5,
        beta2=0.8,
        beta3=-0.3,
        beta4=0.2,
        beta5=0.5,
    )


@pytest.fixture
def continuous_config() -> ModelConfig:
    return ModelConfig(
        outcome_kind=OutcomeKind.CONTINUOUS,
        alpha0=0.0,
        alpha1=0.5,
        alpha2=-0.8,
        beta0=50.0,
        beta1=5.0,
        beta2=-10.0,
        beta3=-10.0,
        beta4=-15.0,
        beta5=15.0,
    )


@pytest.fixture
def extreme_config() -> ModelConfig:
    return ModelConfig.from_vector(EXTREME_BINARY, outcome_kind=OutcomeKind.BINARY)


@pytest.fixture
def eight_rows() -> ObservedDataset:
    arr = np.array(EIGHT_ROWS, dtype=float)
    return ObservedDataset(arr[:, 0], arr[:, 1], arr[:, 2])


@pytest.fixture
def eight_rows_csv(tmp_path):
    path = tmp_path / "eight.csv"
    path.write_text("A,M,Y\n" + "".join(f"{a},{m},{y}\n" for a, m, y in EIGHT_ROWS))
    return path
