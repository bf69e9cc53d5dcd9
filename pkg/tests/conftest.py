import numpy as np
import pytest

from llhyst.core import SpatialGrid
from llhyst.llpde import LLParams, great_circle_field


@pytest.fixture
def grid41():
    return SpatialGrid(1.0, 41)


@pytest.fixture
def params41(grid41):
    return LLParams(0.02, grid41)


@pytest.fixture
def smooth_field(grid41):
    """Smooth on-constraint test state with a non-trivial profile."""
    return great_circle_field(grid41, {1: 1.2})


def random_unit_vectors(count: int, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    v = rng.normal(size=(count, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)
