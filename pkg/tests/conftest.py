"""Shared fixtures: the expensive model objects are built once per session.

"standard" is the weak-coupling workhorse (lambda = 0.1, EXP form
factor); "weak" (lambda = 0.05) feeds the line-shape and pole-only
checks; "strong" (lambda = 0.25) decays fast enough that the
background overtakes the pole term inside the discretization's
reliable time range.
"""

import numpy as np
import pytest

from friedrichs import core, oracle, spectral


def _model(coupling, family="EXP"):
    return core.FriedrichsModel(
        omega0=1.0,
        coupling=coupling,
        form_factor=core.FormFactor(family, 1.0),
    )


@pytest.fixture(scope="session")
def standard_model():
    return _model(0.1)


@pytest.fixture(scope="session")
def standard_pole(standard_model):
    return core.find_resonance_pole(standard_model)


@pytest.fixture(scope="session")
def standard_phi(standard_model, standard_pole):
    grid = spectral.resonance_energy_grid(standard_model, standard_pole)
    return spectral.discrete_state_wavefunction(
        standard_model, grid=grid, pole=standard_pole
    )


@pytest.fixture(scope="session")
def weak_model():
    return _model(0.05)


@pytest.fixture(scope="session")
def weak_pole(weak_model):
    return core.find_resonance_pole(weak_model)


@pytest.fixture(scope="session")
def oracle_std(standard_model):
    return oracle.discretize(standard_model, 2000)


@pytest.fixture(scope="session")
def strong_series():
    """Decomposed survival for lambda = 0.25 out to t = 250.

    The time grid starts at 0, carries a geometric cluster of early
    points for the short-time exponent, and reaches past the
    background/pole crossover near t = 168.
    """
    model = _model(0.25)
    pole = core.find_resonance_pole(model)
    grid = spectral.resonance_energy_grid(model, pole)
    phi = spectral.discrete_state_wavefunction(model, grid=grid, pole=pole)
    times = np.linspace(0.0, 250.0, 600)
    early = np.geomspace(1e-3 / pole.gamma, 0.0099 / pole.gamma, 12)
    times = np.unique(np.concatenate([times, early]))
    series = spectral.survival_decomposed(model, phi, times, pole=pole)
    return model, pole, series
