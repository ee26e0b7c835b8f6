import numpy as np
import pytest

from weinstein import (WeinsteinParams, build_grid, make_admissible_radial,
                       make_plan)


@pytest.fixture(scope="session")
def plan_half():
    """Workhorse d=1, alpha=1/2 plan on the default uniform-offset grid."""
    params = WeinsteinParams(d=1, alpha=0.5)
    grid = build_grid(params, (8.0, 8.0), (128, 128))
    return make_plan(grid)


@pytest.fixture(scope="session")
def plan_half_wide():
    """Wider box for convolution tests (convolutions outgrow their factors)."""
    params = WeinsteinParams(d=1, alpha=0.5)
    grid = build_grid(params, (13.0, 13.0), (128, 128))
    return make_plan(grid)


@pytest.fixture(scope="session")
def plan_one_colloc():
    """alpha=1 plan on a collocation radial axis (spectrally exact weights)."""
    params = WeinsteinParams(d=1, alpha=1.0)
    grid = build_grid(params, (8.0, 8.0), (96, 96), radial_scheme="collocation")
    return make_plan(grid)


@pytest.fixture(scope="session")
def plan_2d():
    params = WeinsteinParams(d=2, alpha=1.0)
    grid = build_grid(params, (6.5, 6.5, 6.5), (48, 48, 48),
                      radial_scheme="collocation")
    return make_plan(grid)


@pytest.fixture(scope="session")
def bump_profile(plan_mult):
    return make_admissible_radial(plan_mult)


@pytest.fixture(scope="session")
def plan_mult():
    """Grid sized so the multiplier family's output fits the box."""
    params = WeinsteinParams(d=1, alpha=0.5)
    grid = build_grid(params, (12.0, 12.0), (192, 192))
    return make_plan(grid)


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
