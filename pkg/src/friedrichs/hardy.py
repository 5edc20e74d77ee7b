"""Time-support diagnostics: upper/lower Hardy splitting of energy profiles.

A function analytic and decaying in the lower half of the energy plane
has a time profile G(t) = int phi(E) exp(-iEt) dE supported on t < 0;
analyticity in the upper half-plane forces support on t > 0 (close the
contour downward/upward respectively).  That Paley-Wiener
characterization is what these routines operationalize: membership is
decided by where the transform's energy actually lives, not by
attempting analytic continuation of samples.

The split works on a uniform energy grid via the DFT pairing
t_k = 2*pi*k/(N*dE): bins with t_k >= 0 form the "upper" part (profile
supported at nonnegative times, observable-like), the rest the "lower"
part (state-like).  Completeness upper + lower = phi holds exactly by
construction, and the norm fractions are computed in the transform
domain where Parseval makes them exact.  Grids that do not reach
negative energies are zero-padded to a symmetric span first (the
transform convention wants the full line even though the physical
spectrum lives on [0, inf)); results are returned on the caller's grid.

Classification threshold: a fraction above 0.99 in one half labels the
function state_like (lower) or observable_like (upper); anything else
is mixed.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import AliasRisk, InvalidGrid
from .spectral import EnergyWavefunction, oscillatory_transform

CLASSIFICATION_THRESHOLD = 0.99

_EDGE_FRACTION = 1e-3


@dataclass(frozen=True, eq=False)
class TimeProfile:
    """Complex transform samples G(t) on an increasing time grid."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        if times.ndim != 1 or values.shape != times.shape:
            raise InvalidGrid("times and values must be matching 1-d arrays")
        if times.size >= 2 and not np.all(np.diff(times) > 0):
            raise InvalidGrid("times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def energy(self):
        """(1/2pi) int |G(t)|^2 dt over the sampled range (trapezoid)."""
        return float(
            np.trapezoid(np.abs(self.values) ** 2, self.times) / (2.0 * np.pi)
        )


@dataclass(frozen=True)
class HardyScores:
    """Norm fractions of the time profile on t >= 0 (upper) and t < 0."""

    upper_fraction: float
    lower_fraction: float

    @property
    def classification(self):
        if self.lower_fraction > CLASSIFICATION_THRESHOLD:
            return "state_like"
        if self.upper_fraction > CLASSIFICATION_THRESHOLD:
            return "observable_like"
        return "mixed"

    def to_dict(self):
        return {
            "upper_fraction": self.upper_fraction,
            "lower_fraction": self.lower_fraction,
            "classification": self.classification,
        }


def line_grid(half_width=400.0, n=2**16):
    """Uniform full-line energy grid [-L, L) with an exact E = 0 sample."""
    if n < 16 or n % 2:
        raise InvalidGrid(f"need an even grid size >= 16, got {n}")
    h = 2.0 * half_width / n
    return -half_width + h * np.arange(n)


def cauchy_test_function(grid, pole=1j):
    """Normalized samples of 1/(E - pole); pole off the real axis.

    A pole in the upper half-plane (+1j) makes the profile state_like,
    one in the lower half-plane (-1j) makes it observable_like.
    """
    pole = complex(pole)
    if pole.imag == 0.0:
        raise ValueError("pole must lie off the real axis")
    g = np.asarray(grid, dtype=float)
    return EnergyWavefunction(g, 1.0 / (g - pole)).normalized()


def time_profile(phi, times):
    """G(t) = int phi(E) exp(-iEt) dE at each requested time.

    Warns AliasRisk when some |t| exceeds the grid's Nyquist time
    pi/max(dE): beyond it the piecewise-linear interpolant no longer
    resolves the oscillation and the values are untrustworthy.
    """
    t_arr = np.atleast_1d(np.asarray(times, dtype=float))
    nyquist = np.pi / np.max(np.diff(phi.grid))
    t_max = float(np.max(np.abs(t_arr))) if t_arr.size else 0.0
    if t_max > nyquist:
        warnings.warn(
            f"max |t| = {t_max:.3g} exceeds the grid Nyquist time "
            f"{nyquist:.3g}; refine the energy grid",
            AliasRisk,
            stacklevel=2,
        )
    values = oscillatory_transform(phi.grid, phi.values, t_arr)
    order = np.argsort(t_arr)
    return TimeProfile(times=t_arr[order], values=values[order])


def _uniform_spacing(grid):
    steps = np.diff(grid)
    h = float(steps[0])
    if np.max(np.abs(steps - h)) > 1e-9 * abs(h):
        raise InvalidGrid(
            "hardy splitting needs a uniform energy grid; resample first"
        )
    return h


def _padded(phi):
    """Zero-pad one-sided grids leftward to a span symmetric about E = 0.

    Grids that already reach negative energies pass through untouched,
    which keeps split/re-split round trips exact on full-line grids.
    """
    h = _uniform_spacing(phi.grid)
    lo, hi = phi.grid[0], phi.grid[-1]
    n_left = int(round((lo + hi) / h))
    if lo <= -h or n_left <= 0:
        return phi.grid, phi.values, 0
    grid = np.concatenate([lo - h * np.arange(n_left, 0, -1), phi.grid])
    values = np.concatenate([np.zeros(n_left, complex), phi.values])
    return grid, values, n_left


def _edge_check(values):
    peak = float(np.max(np.abs(values)))
    if peak == 0.0:
        return
    edge = max(abs(values[0]), abs(values[-1]))
    if edge > _EDGE_FRACTION * peak:
        warnings.warn(
            f"samples at the grid edge are {edge / peak:.2e} of the peak; "
            "the transform wraps around, widen the grid",
            AliasRisk,
            stacklevel=3,
        )


def _split_spectrum(phi):
    grid, values, offset = _padded(phi)
    _edge_check(values)
    h = float(grid[1] - grid[0])
    spectrum = np.fft.fft(values)
    t_k = 2.0 * np.pi * np.fft.fftfreq(grid.size, d=h)
    mask = t_k >= 0.0
    return grid, values, offset, spectrum, mask


def hardy_split(phi):
    """Split phi into (upper, lower) halves by time support.

    upper carries the t >= 0 part of the profile (observable-like
    content), lower the t < 0 part (state-like content); their samples
    sum to phi exactly.  Splitting either part again is idempotent.
    """
    grid, values, offset, spectrum, mask = _split_spectrum(phi)
    upper_full = np.fft.ifft(spectrum * mask)
    sel = slice(offset, offset + phi.grid.size)
    upper_vals = upper_full[sel]
    lower_vals = phi.values - upper_vals
    upper = EnergyWavefunction(phi.grid, upper_vals)
    lower = EnergyWavefunction(phi.grid, lower_vals)
    return upper, lower


def hardy_scores(phi):
    """Fractions of the profile's norm at t >= 0 and t < 0."""
    _, _, _, spectrum, mask = _split_spectrum(phi)
    power = np.abs(spectrum) ** 2
    total = float(power.sum())
    if total == 0.0:
        raise ValueError("cannot score a zero wavefunction")
    up = float(power[mask].sum()) / total
    return HardyScores(upper_fraction=up, lower_fraction=1.0 - up)
