"""Half-plane splitting, time profiles, and the hardy classification."""

import numpy as np
import pytest

from friedrichs import hardy, spectral
from friedrichs.errors import AliasRisk, InvalidGrid

# pinned desk value: standard discrete state on a uniform [0, 40) grid
_DISCRETE_UPPER = 0.997644282296402


@pytest.fixture(scope="module")
def grid():
    return hardy.line_grid(400.0, 2**16)


def test_line_grid_layout(grid):
    assert grid.size == 2**16
    assert grid[0] == -400.0
    assert grid[grid.size // 2] == 0.0
    h = np.diff(grid)
    assert np.allclose(h, h[0], rtol=0, atol=1e-12)
    with pytest.raises(InvalidGrid):
        hardy.line_grid(400.0, 1001)


def test_upper_pole_is_state_like(grid):
    phi = hardy.cauchy_test_function(grid, pole=+1j)
    scores = hardy.hardy_scores(phi)
    assert scores.lower_fraction > 0.99
    assert scores.classification == "state_like"


def test_lower_pole_is_observable_like(grid):
    phi = hardy.cauchy_test_function(grid, pole=-1j)
    scores = hardy.hardy_scores(phi)
    assert scores.upper_fraction > 0.99
    assert scores.classification == "observable_like"


def test_fractions_sum_to_one(grid):
    phi = hardy.cauchy_test_function(grid, pole=0.3 + 0.7j)
    scores = hardy.hardy_scores(phi)
    assert scores.upper_fraction + scores.lower_fraction == pytest.approx(
        1.0, abs=1e-12
    )


def test_symmetric_gaussian_is_mixed(grid):
    phi = spectral.gaussian_wavepacket(grid, 0.0, 2.0)
    scores = hardy.hardy_scores(phi)
    assert scores.upper_fraction == pytest.approx(0.5, abs=0.01)
    assert scores.classification == "mixed"


def test_split_is_complete_and_idempotent(grid):
    phi = hardy.cauchy_test_function(grid, pole=0.5 + 2.0j)
    upper, lower = hardy.hardy_split(phi)
    recon = upper.values + lower.values
    assert np.max(np.abs(recon - phi.values)) < 1e-15
    upper2, residue = hardy.hardy_split(upper)
    assert np.max(np.abs(upper2.values - upper.values)) < 1e-12
    assert np.max(np.abs(residue.values)) < 1e-12


def test_split_is_linear(grid):
    a = hardy.cauchy_test_function(grid, pole=+1j)
    b = spectral.gaussian_wavepacket(grid, 1.0, 3.0)
    both = spectral.EnergyWavefunction(grid, a.values + b.values)
    up_a, _ = hardy.hardy_split(a)
    up_b, _ = hardy.hardy_split(b)
    up_ab, _ = hardy.hardy_split(both)
    assert np.max(np.abs(up_ab.values - up_a.values - up_b.values)) < 1e-12


def test_time_profile_gaussian_pair(grid):
    w = 2.0
    phi = spectral.gaussian_wavepacket(grid, 0.0, w)
    times = np.array([0.0, 0.1, 0.4, 1.0])
    profile = hardy.time_profile(phi, times)
    # int exp(-E^2/(4w^2)) exp(-iEt) dE = 2w*sqrt(pi) exp(-w^2 t^2)
    peak = phi.values[grid.size // 2].real
    want = peak * 2.0 * w * np.sqrt(np.pi) * np.exp(-(w * times) ** 2)
    assert np.max(np.abs(profile.values - want)) < 1e-5 * want[0]


def test_time_profile_energy_matches_norm(grid):
    phi = spectral.gaussian_wavepacket(grid, 0.0, 2.0)
    times = np.linspace(-4.0, 4.0, 1601)
    profile = hardy.time_profile(phi, times)
    assert profile.energy() == pytest.approx(phi.norm_squared(), rel=1e-3)


def test_time_profile_warns_past_nyquist(grid):
    phi = spectral.gaussian_wavepacket(grid, 0.0, 2.0)
    with pytest.warns(AliasRisk):
        hardy.time_profile(phi, np.array([0.0, 400.0]))


def test_edge_heavy_function_warns(grid):
    phi = hardy.cauchy_test_function(grid, pole=+1j)  # 1/E tails
    with pytest.warns(AliasRisk):
        hardy.hardy_scores(phi)


def test_non_uniform_grid_rejected():
    g = np.concatenate([np.linspace(-10, 0, 64), np.linspace(0.1, 30, 64)])
    phi = spectral.EnergyWavefunction(g, np.exp(-(g**2)))
    with pytest.raises(InvalidGrid):
        hardy.hardy_scores(phi)


def test_discrete_state_is_observable_like(standard_model, standard_pole):
    # resolvent boundary values from above are upper-half analytic, so
    # the decay profile lives at t >= 0
    n = 2**16
    h = standard_model.omega_max / n
    g = h * np.arange(n)
    phi = spectral.discrete_state_wavefunction(
        standard_model, grid=g, pole=standard_pole
    )
    scores = hardy.hardy_scores(phi)
    assert scores.upper_fraction == pytest.approx(_DISCRETE_UPPER, abs=1e-9)
    assert scores.classification == "observable_like"


def test_padding_only_extends_one_sided_grids(grid):
    # full-line grids pass through the splitter unpadded
    phi = spectral.gaussian_wavepacket(grid, 0.0, 2.0)
    padded_grid, padded_vals, offset = hardy._padded(phi)
    assert offset == 0
    assert padded_grid is phi.grid
    # one-sided grids are extended to a span symmetric about zero
    g = np.linspace(0.0, 10.0, 129)[:-1]
    one_sided = spectral.EnergyWavefunction(g, np.exp(-g))
    padded_grid, padded_vals, offset = hardy._padded(one_sided)
    assert offset > 0
    assert padded_grid[0] == pytest.approx(-g[-1], abs=1e-9)
    assert np.all(padded_vals[:offset] == 0.0)
