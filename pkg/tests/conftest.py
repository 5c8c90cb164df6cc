"""Shared fixtures: small grids and kernel tables, built once per session.

Kernel tables dominate collection time, so anything above n=8 is kept at
the coarsest quadrature that the tests' tolerances allow.
"""

import numpy as np
import pytest

from landau.collision import CollisionWorkspace, maxwellian_field
from landau.grid import make_grid
from landau.kernel import compute_kernel_table


@pytest.fixture(scope="session")
def grid8():
    return make_grid(8, 7.0)


@pytest.fixture(scope="session")
def kernel8(grid8):
    return compute_kernel_table(grid8, 256)


@pytest.fixture(scope="session")
def ws8(grid8, kernel8):
    return CollisionWorkspace(grid8, kernel8)


@pytest.fixture(scope="session")
def grid16():
    return make_grid(16, 7.0)


@pytest.fixture(scope="session")
def kernel16(grid16):
    return compute_kernel_table(grid16, 256)


@pytest.fixture(scope="session")
def ws16(grid16, kernel16):
    return CollisionWorkspace(grid16, kernel16)


@pytest.fixture(scope="session")
def maxwellian8(grid8):
    return maxwellian_field(1.0, (0.0, 0.0, 0.0), 1.0, grid8)


@pytest.fixture
def bumpy_field():
    """Factory for smooth, strictly positive multi-hump test fields."""

    def build(grid, seed=0, humps=4):
        rng = np.random.default_rng(seed)
        X, Y, Z = grid.node_mesh()
        values = np.zeros((grid.n,) * 3)
        for _ in range(humps):
            center = rng.uniform(-0.3 * grid.R, 0.3 * grid.R, size=3)
            width = rng.uniform(0.15 * grid.R, 0.35 * grid.R)
            amp = rng.uniform(0.2, 1.0)
            values += amp * np.exp(
                -((X - center[0]) ** 2 + (Y - center[1]) ** 2 + (Z - center[2]) ** 2)
                / (2.0 * width**2)
            )
        return values

    return build
