"""Brute-force cross-check: diagonalize a discretized copy of the model.

The continuum [0, omega_max] is replaced by n_levels states at the
midpoints w_j = (j + 1/2) * dw, dw = omega_max / n_levels, coupled to the
discrete level with strengths g_j = coupling * f(w_j) * sqrt(dw).  The
resulting (n+1) x (n+1) real symmetric arrowhead matrix is diagonalized
densely; everything downstream is an exact property of that finite
matrix, so this module contains no quadrature and no continuation and
serves as an independent oracle for the analytic machinery.

Discretization artifacts are controlled by two scales: convergence in
n_levels is first order in dw, and the finite level spacing makes every
time signal quasi-periodic with recurrence ~ 2*pi/dw (the Heisenberg
time).  Comparisons against continuum results are meaningful only well
below that time, so it is carried on every survival series and enforced
by the pole fit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from .core import ComplexPole, FriedrichsModel
from .errors import DiagonalizationFailure, InsufficientSampling, PoorFit

_MAX_LEVELS = 6000


@dataclass(frozen=True, eq=False)
class DiscretizedModel:
    """Eigendecomposition of the discretized Hamiltonian.

    weights[j] = |<1|E_j>|^2 sum to 1 exactly (orthonormal eigenbasis),
    so the discretized survival amplitude is unitary by construction.
    """

    model: FriedrichsModel
    n_levels: int
    omega_max: float
    omegas: np.ndarray = field(repr=False)
    couplings: np.ndarray = field(repr=False)
    eigenvalues: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @property
    def level_spacing(self):
        return self.omega_max / self.n_levels

    @property
    def heisenberg_time(self):
        """Recurrence scale 2*pi/dw of the finite-level dynamics."""
        return 2.0 * np.pi / self.level_spacing


@dataclass(frozen=True, eq=False)
class OracleSurvival:
    """Survival amplitude of the discretized model at the given times."""

    times: np.ndarray
    values: np.ndarray
    heisenberg_time: float


def discretize(model, n_levels, omega_max=None):
    """Build and diagonalize the (n_levels+1)-state arrowhead matrix."""
    if not (16 <= n_levels <= _MAX_LEVELS):
        raise ValueError(
            f"n_levels must be in [16, {_MAX_LEVELS}], got {n_levels}"
        )
    if omega_max is None:
        omega_max = model.omega_max
    if not (model.omega0 < omega_max):
        raise ValueError("omega_max must exceed omega0")
    dw = omega_max / n_levels
    omegas = (np.arange(n_levels) + 0.5) * dw
    couplings = model.coupling * np.sqrt(
        model.form_factor.strength(omegas) * dw
    )
    h = np.zeros((n_levels + 1, n_levels + 1))
    h[0, 0] = model.omega0
    h[0, 1:] = couplings
    h[1:, 0] = couplings
    idx = np.arange(1, n_levels + 1)
    h[idx, idx] = omegas
    try:
        eigenvalues, vectors = linalg.eigh(h)
    except linalg.LinAlgError as exc:
        raise DiagonalizationFailure(str(exc)) from exc
    weights = vectors[0, :] ** 2
    return DiscretizedModel(
        model=model,
        n_levels=n_levels,
        omega_max=float(omega_max),
        omegas=omegas,
        couplings=couplings,
        eigenvalues=eigenvalues,
        weights=weights,
    )


def survival_amplitude(disc, times):
    """A(t) = sum_j |<1|E_j>|^2 exp(-i E_j t) for the finite matrix."""
    t = np.atleast_1d(np.asarray(times, dtype=float))
    phases = np.exp(-1j * np.outer(t, disc.eigenvalues))
    values = phases @ disc.weights
    return OracleSurvival(
        times=t, values=values, heisenberg_time=disc.heisenberg_time
    )


def resolvent_element(disc, z):
    """<1|(z - H)^{-1}|1> of the finite matrix, exact via eigenbasis."""
    z = np.asarray(z, dtype=complex)
    return (disc.weights / (z[..., None] - disc.eigenvalues)).sum(axis=-1)


def resolvent_element_schur(disc, z):
    """Same matrix element through the arrowhead Schur complement.

    Algebraically identical to resolvent_element; kept as a second route
    so tests can confirm the eigendecomposition against direct inversion.
    """
    z = np.asarray(z, dtype=complex)
    shift = (disc.couplings**2 / (z[..., None] - disc.omegas)).sum(axis=-1)
    return 1.0 / (z - disc.model.omega0 - shift)


def fit_pole_from_survival(survival, t_lo, t_hi):
    """Exponential-decay fit on a window of a survival series.

    log|A| gives Gamma from its slope, the unwrapped phase gives E_R,
    and the extrapolated t=0 value is stored as the residue.  Raises
    PoorFit when the relative amplitude residual exceeds 5%, and refuses
    windows that reach past the Heisenberg time where the finite-level
    recurrence invalidates the decay law.
    """
    if t_hi <= t_lo:
        raise ValueError(f"empty fit window [{t_lo}, {t_hi}]")
    if t_hi > survival.heisenberg_time:
        raise ValueError(
            f"fit window end {t_hi} exceeds the Heisenberg time "
            f"{survival.heisenberg_time:.3g}"
        )
    mask = (survival.times >= t_lo) & (survival.times <= t_hi)
    if mask.sum() < 8:
        raise InsufficientSampling(
            f"only {int(mask.sum())} samples inside the fit window"
        )
    t = survival.times[mask]
    a = survival.values[mask]
    if np.any(np.abs(a) == 0.0):
        raise PoorFit("survival amplitude vanishes inside the fit window")
    design = np.column_stack([np.ones_like(t), t])
    log_coef, *_ = np.linalg.lstsq(design, np.log(np.abs(a)), rcond=None)
    phase_coef, *_ = np.linalg.lstsq(design, np.unwrap(np.angle(a)), rcond=None)
    gamma = -2.0 * log_coef[1]
    e_r = -phase_coef[1]
    residue = np.exp(log_coef[0] + 1j * phase_coef[0])
    fit_vals = residue * np.exp((-1j * e_r - 0.5 * gamma) * t)
    resid = np.sqrt(np.mean(np.abs(a - fit_vals) ** 2) / np.mean(np.abs(a) ** 2))
    if resid > 0.05:
        raise PoorFit(
            f"relative fit residual {resid:.3f} exceeds 0.05 on [{t_lo}, {t_hi}]"
        )
    return ComplexPole(e_r=float(e_r), gamma=float(gamma), residue=complex(residue))
