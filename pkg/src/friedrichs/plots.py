"""Headless figure rendering for the experiment reports.

All figures use the Agg backend with fixed size, dpi, and file metadata
so that repeated runs of the same experiment produce byte-identical
image files.  Every renderer returns the path it wrote.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_DPI = 120
_META = {"Software": "friedrichs"}
_FLOOR = 1e-300


def _save(fig, path):
    fig.savefig(str(path), dpi=_DPI, metadata=_META)
    plt.close(fig)
    return str(path)


def decay_figure(path, series):
    """Survival probability with its pole and background contributions."""
    t = series.times
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    ax.semilogy(t, np.abs(series.amplitude) ** 2 + _FLOOR, "k-", lw=1.2,
                label="exact")
    ax.semilogy(t, np.abs(series.pole_part) ** 2 + _FLOOR, "C0--", lw=1.0,
                label="pole term")
    ax.semilogy(t, np.abs(series.background_part) ** 2 + _FLOOR, "C1:",
                lw=1.0, label="background")
    ax.set_xlabel("t")
    ax.set_ylabel("survival probability")
    ax.set_ylim(bottom=max(np.abs(series.amplitude[-1]) ** 2 * 1e-4, 1e-18))
    ax.legend(loc="best")
    ax.grid(True, which="both", alpha=0.3)
    return _save(fig, path)


def line_shape_figure(path, energies, density, fit_values, center, fwhm):
    """Spectral density near the resonance with the fitted Lorentzian."""
    sel = np.abs(energies - center) <= 6.0 * fwhm
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    ax.plot(energies[sel], density[sel], "k-", lw=1.2, label="density")
    ax.plot(energies[sel], fit_values[sel], "C3--", lw=1.0,
            label="Lorentzian fit")
    ax.set_xlabel("E")
    ax.set_ylabel("spectral density")
    ax.legend(loc="best")
    ax.grid(True, alpha=0.3)
    return _save(fig, path)


def oracle_figure(path, times, abs_exact, abs_oracle):
    """Continuum survival versus the discretized-model reference."""
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7.0, 6.5), sharex=True)
    ax1.plot(times, abs_exact, "k-", lw=1.2, label="continuum")
    ax1.plot(times, abs_oracle, "C0--", lw=1.0, label="discretized")
    ax1.set_ylabel("|A(t)|")
    ax1.legend(loc="best")
    ax1.grid(True, alpha=0.3)
    ax2.semilogy(times, np.abs(abs_exact - abs_oracle) + _FLOOR, "C1-", lw=1.0)
    ax2.set_xlabel("t")
    ax2.set_ylabel("|difference|")
    ax2.grid(True, which="both", alpha=0.3)
    return _save(fig, path)


def hardy_figure(path, profile):
    """Time profile magnitude with the t < 0 half shaded."""
    t = profile.times
    mag = np.abs(profile.values)
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    ax.plot(t, mag, "k-", lw=1.2)
    if t[0] < 0.0:
        ax.axvspan(t[0], 0.0, color="C0", alpha=0.15, label="t < 0 (state-like)")
        ax.legend(loc="best")
    ax.set_xlabel("t")
    ax.set_ylabel("|G(t)|")
    ax.grid(True, alpha=0.3)
    return _save(fig, path)


def semigroup_figure(path, times, moduli, kind):
    """Evolution-factor modulus along the branch's legal time domain."""
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    ax.semilogy(times, np.asarray(moduli) + _FLOOR, "ko-", ms=3, lw=1.0)
    ax.set_xlabel("t")
    ax.set_ylabel(f"|factor| ({kind.lower()} branch)")
    ax.grid(True, which="both", alpha=0.3)
    return _save(fig, path)
