"""Shared fixtures; expensive trajectories are session-scoped and lazy."""

import numpy as np
import pytest

from nmsqueeze import SpectralModel, find_bound_state, markov_kappa, solve_volterra


@pytest.fixture(scope="session")
def model_003():
    return SpectralModel(eta=0.03, s=1.0, omega_c=50.0)


@pytest.fixture(scope="session")
def model_001():
    return SpectralModel(eta=0.01, s=1.0, omega_c=50.0)


@pytest.fixture(scope="session")
def bound_003(model_003):
    return find_bound_state(model_003)


@pytest.fixture(scope="session")
def traj_003_t50(model_003):
    return solve_volterra(model_003, t_max=50.0, dt=2.5e-3)


@pytest.fixture(scope="session")
def traj_003_t400(model_003):
    return solve_volterra(model_003, t_max=400.0, dt=5e-3)


@pytest.fixture(scope="session")
def traj_001_t400(model_001):
    return solve_volterra(model_001, t_max=400.0, dt=5e-3)


@pytest.fixture(scope="session")
def traj_markov():
    model = SpectralModel(eta=0.001, s=1.0, omega_c=50.0)
    kappa = markov_kappa(model)
    return model, solve_volterra(model, t_max=1.005 / kappa, dt=2.5e-3)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240811)
