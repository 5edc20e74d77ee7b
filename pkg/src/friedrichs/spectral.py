"""Survival amplitude and its resonance (pole) / background split.

For a state phi with energy samples phi(E) = <E|phi>, the survival
amplitude under e^{-iHt} is

    A(t) = int_0^inf |phi(E)|^2 exp(-i E t) dE.

The integrand is peaked at the resonance and the phase oscillates with
period 2*pi/t, so plain quadrature loses all digits at large t.  Here
the density is taken piecewise linear between its samples and each cell
is integrated against exp(-iEt) in closed form (a Filon-type rule); the
result is exact for the interpolant at every t, reduces to the
trapezoid rule at t = 0, and costs O(n_grid) per time.

Continuing the density through the cut into the lower half plane picks
up the resonance pole z_R = E_R - i*Gamma/2; the residue there defines
the exponential piece of the decay,

    pole_part(t) = gamow_coefficient * exp(-i E_R t) * exp(-Gamma t / 2),

with gamow_coefficient = -2*pi*i times the residue of the continued
density.  The residue is extracted from the samples themselves by
barycentric rational (AAA) interpolation around the resonance window,
so it works for any sampled state; for the discrete state the closed
form lam^2 F(z_R) / (D(z_R) * D_II'(z_R)) is available as a cross-check,
and a rotated-ray contour integral provides an independent route to the
background.  The background is defined by subtraction,
background(t) = A(t) - pole_part(t), which makes the reconstruction
identity exact by construction.

Internally every density is renormalized by its own trapezoid norm, so
A(0) = 1 exactly and |A(t)| <= 1 up to rounding for any admissible phi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import AAA
from scipy.optimize import curve_fit

from .core import (
    FIRST,
    ComplexPole,
    FriedrichsModel,
    find_resonance_pole,
    resolvent_denominator,
    resolvent_denominator_boundary,
)
from .errors import (
    ContinuationFailure,
    InsufficientSampling,
    InvalidGrid,
    NegativeTime,
    NotNormalized,
)

_NORM_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class EnergyWavefunction:
    """Complex samples <E|phi> on a strictly increasing energy grid.

    Physical states produced by this package live on [0, omega_max];
    negative energies are permitted so that full-line diagnostics (time
    profiles, half-plane splits) can use the same container.
    """

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        if grid.ndim != 1 or values.shape != grid.shape:
            raise InvalidGrid(
                f"grid and values must be matching 1-d arrays, "
                f"got {grid.shape} and {values.shape}"
            )
        if grid.size < 8:
            raise InvalidGrid(f"grid needs at least 8 points, got {grid.size}")
        if not np.all(np.diff(grid) > 0):
            raise InvalidGrid("grid must be strictly increasing")
        if not (np.all(np.isfinite(grid)) and np.all(np.isfinite(values))):
            raise InvalidGrid("grid and values must be finite")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def norm_squared(self):
        """Trapezoid estimate of int |phi(E)|^2 dE."""
        return float(np.trapezoid(np.abs(self.values) ** 2, self.grid))

    def normalized(self):
        """Rescaled copy whose grid norm_squared is exactly 1."""
        n2 = self.norm_squared()
        if n2 <= 0:
            raise NotNormalized("cannot normalize a zero wavefunction")
        return EnergyWavefunction(self.grid, self.values / math.sqrt(n2))


@dataclass(frozen=True, eq=False)
class GamowDecomposition:
    """Resonance pole, its amplitude coefficient, and the leftover density.

    background holds the density samples minus the conjugate pair of
    resonance pole terms (a real-valued residual continuum component);
    the time-domain background is always formed by subtraction instead.
    """

    pole: ComplexPole
    coefficient: complex
    background: EnergyWavefunction


@dataclass(frozen=True, eq=False)
class SurvivalSeries:
    """Survival amplitude with its pole/background split on a time grid."""

    times: np.ndarray
    amplitude: np.ndarray
    pole_part: np.ndarray
    background_part: np.ndarray
    decomposition: GamowDecomposition | None = field(default=None, repr=False)


@dataclass(frozen=True)
class DeviationMetrics:
    """How far a survival series is from the pure exponential law.

    crossover_time is None when the background never overtakes the pole
    term inside the sampled range.
    """

    gamma_fit: float
    short_time_exponent: float
    background_fraction: float
    crossover_time: float | None

    def to_dict(self):
        return {
            "gamma_fit": self.gamma_fit,
            "short_time_exponent": self.short_time_exponent,
            "background_fraction": self.background_fraction,
            "crossover_time": self.crossover_time,
        }


# ---------------------------------------------------------------------------
# oscillatory transform of sampled data


def _sinc(x):
    # sin(x)/x, exact at 0
    return np.sinc(x / np.pi)


def _sinc_prime(x):
    # d/dx sin(x)/x with a series near 0 to dodge the cancellation
    small = np.abs(x) < 1e-3
    xs = np.where(small, 1.0, x)
    closed = (xs * np.cos(xs) - np.sin(xs)) / (xs * xs)
    series = -x / 3.0 + x**3 / 30.0
    return np.where(small, series, closed)


def oscillatory_transform(grid, values, times):
    """int values(E) exp(-i E t) dE for piecewise-linear sampled values.

    Exact for the linear interpolant at every t (Filon-type closed-form
    cell moments), so large Gamma*t costs no accuracy.  values may be
    complex; times may have either sign.
    """
    grid = np.asarray(grid, dtype=float)
    v = np.asarray(values)
    half = 0.5 * np.diff(grid)
    mid = 0.5 * (grid[1:] + grid[:-1])
    vsum = v[1:] + v[:-1]
    vdif = v[1:] - v[:-1]
    t_arr = np.atleast_1d(np.asarray(times, dtype=float))
    out = np.empty(t_arr.shape, dtype=complex)
    for k, t in enumerate(t_arr):
        theta = half * t
        cell = vsum * _sinc(theta) + 1j * vdif * _sinc_prime(theta)
        out[k] = np.sum(half * np.exp(-1j * mid * t) * cell)
    return out


# ---------------------------------------------------------------------------
# state builders


def resonance_energy_grid(
    model, pole, fine_per_width=100, coarse_per_scale=256, half_widths=30.0
):
    """Energy grid on [0, omega_max], refined around the resonance.

    The window [E_R - half_widths*Gamma, E_R + half_widths*Gamma] gets
    fine_per_width points per Gamma; outside it the spacing is
    scale/coarse_per_scale.  Construction is deterministic.
    """
    if pole.gamma <= 0:
        raise ValueError("grid refinement needs a pole with gamma > 0")
    omax = model.omega_max
    h_fine = pole.gamma / fine_per_width
    h_coarse = model.form_factor.scale / coarse_per_scale
    lo = max(0.0, pole.e_r - half_widths * pole.gamma)
    hi = min(omax, pole.e_r + half_widths * pole.gamma)
    segments = []
    if lo > 0.0:
        segments.append(np.linspace(0.0, lo, max(2, math.ceil(lo / h_coarse) + 1)))
    segments.append(np.linspace(lo, hi, max(2, math.ceil((hi - lo) / h_fine) + 1)))
    if hi < omax:
        segments.append(
            np.linspace(hi, omax, max(2, math.ceil((omax - hi) / h_coarse) + 1))
        )
    return np.unique(np.concatenate(segments))


def discrete_state_wavefunction(model, grid=None, pole=None):
    """Samples of <E|1> = coupling * f(E) / D(E+i0) for the bare level.

    f(E) = sqrt(F(E)) >= 0 fixes the phase convention.  The returned
    samples are rescaled so the grid norm_squared is exactly 1; the raw
    density coupling^2 F / |D|^2 already integrates to 1 up to grid
    error when no bound state is present.
    """
    if model.coupling == 0.0:
        raise ValueError("the uncoupled level has no continuum samples")
    if pole is None:
        pole = find_resonance_pole(model)
    if grid is None:
        grid = resonance_energy_grid(model, pole)
    f_vals = np.sqrt(model.form_factor.strength(grid))
    denom = resolvent_denominator_boundary(model, grid)
    raw = EnergyWavefunction(grid, model.coupling * f_vals / denom)
    return raw.normalized()


def gaussian_wavepacket(grid, center, width):
    """Normalized Gaussian profile exp(-(E-center)^2/(4 width^2))."""
    if width <= 0:
        raise ValueError(f"width must be positive, got {width}")
    g = np.asarray(grid, dtype=float)
    vals = np.exp(-((g - center) ** 2) / (4.0 * width**2)).astype(complex)
    return EnergyWavefunction(g, vals).normalized()


# ---------------------------------------------------------------------------
# survival amplitude


def _density(phi):
    rho = np.abs(phi.values) ** 2
    n2 = np.trapezoid(rho, phi.grid)
    if abs(n2 - 1.0) > _NORM_TOL:
        raise NotNormalized(
            f"norm^2 = {n2:.8f} differs from 1 beyond {_NORM_TOL}"
        )
    return rho / n2


def survival_amplitude_exact(phi, times, allow_negative_time=False):
    """A(t) = int |phi(E)|^2 exp(-iEt) dE from the samples of phi.

    A(0) = 1 exactly and |A(t)| <= 1 up to rounding.  Negative times are
    refused unless explicitly allowed (the exact amplitude satisfies
    A(-t) = conj(A(t)); the opt-in exists so the time-symmetric exact
    evolution is never confused with the one-sided semigroups).
    """
    t_arr = np.atleast_1d(np.asarray(times, dtype=float))
    if not allow_negative_time and np.any(t_arr < 0):
        raise NegativeTime(
            "negative times need allow_negative_time=True; exact evolution "
            "is reversible, the one-sided decay laws are not"
        )
    rho = _density(phi)
    return oscillatory_transform(phi.grid, rho, t_arr)


# ---------------------------------------------------------------------------
# pole term from the samples


def gamow_coefficient(model, phi, pole=None):
    """-2*pi*i times the residue at z_R of the continued density of phi.

    The density samples inside a window around E_R are interpolated by a
    barycentric rational (AAA) approximant; its analytic continuation
    carries the resonance pole, and the residues of the approximant's
    poles within 0.45*Gamma of z_R give the coefficient.  Defined so
    that pole_part(t) = coefficient * exp(-i E_R t - Gamma t / 2).
    """
    if pole is None:
        pole = find_resonance_pole(model)
    if pole.gamma <= 0:
        raise ValueError("pole term undefined for gamma = 0")
    rho = _density(phi)
    grid = phi.grid
    half = max(25.0 * pole.gamma, 0.02 * model.omega0)
    mask = (grid >= pole.e_r - half) & (grid <= pole.e_r + half)
    if mask.sum() < 40:
        raise InsufficientSampling(
            f"only {int(mask.sum())} density samples within {half:.3g} of "
            f"E_R = {pole.e_r:.6g}; refine the grid around the resonance"
        )
    x = grid[mask]
    y = rho[mask]
    approx = AAA(x, y, max_terms=80)
    resid = np.max(np.abs(approx(x) - y))
    if not np.isfinite(resid) or resid > 1e-6 * max(np.max(np.abs(y)), 1e-300):
        raise ContinuationFailure(
            f"rational interpolant misfits the density by {resid:.3e}"
        )
    poles = approx.poles()
    residues = approx.residues()
    z_r = pole.position
    near = np.abs(poles - z_r) < 0.45 * pole.gamma
    total = complex(residues[near].sum()) if np.any(near) else 0.0 + 0.0j
    if not np.isfinite(total):
        raise ContinuationFailure("diverging residue near the resonance pole")
    return -2j * np.pi * total


def gamow_coefficient_discrete(model, pole):
    """Closed-form coefficient for the discrete state itself.

    The continued density is lam^2 F(z) / (D_II(z) D(z)), so the residue
    at z_R is lam^2 F(z_R) residue / D(z_R) with residue = 1/D_II'(z_R).
    Normalization matches the exact (integral = 1) density.
    """
    z_r = pole.position
    lam2 = model.coupling**2
    d_first = resolvent_denominator(model, z_r, FIRST)
    f_z = complex(model.form_factor.strength_analytic(z_r))
    return -2j * np.pi * lam2 * f_z * pole.residue / d_first


def decompose_survival(model, phi, pole=None):
    """Pole data, Gamow coefficient and residual density for phi."""
    if pole is None:
        pole = find_resonance_pole(model)
    coef = gamow_coefficient(model, phi, pole=pole)
    rho = _density(phi)
    res = coef / (-2j * np.pi)
    z_r = pole.position
    residual = rho - 2.0 * (res / (phi.grid - z_r)).real
    background = EnergyWavefunction(phi.grid, residual.astype(complex))
    return GamowDecomposition(pole=pole, coefficient=coef, background=background)


def pole_part_amplitude(pole, coefficient, times):
    """coefficient * exp(-i E_R t) * exp(-Gamma t / 2)."""
    t = np.atleast_1d(np.asarray(times, dtype=float))
    return coefficient * np.exp(pole.position * (-1j) * t)


def weisskopf_wigner_amplitude(pole, times, coefficient=1.0):
    """Pure exponential approximation: drop the background integral.

    The standard form keeps exp(-i E_R t - Gamma t / 2) with unit
    amplitude at t = 0.  Passing the Gamow coefficient instead gives the
    residue-weighted pole term of the exact decomposition; the two
    differ by |1 - coefficient| = |background(0)| since A(0) = 1.
    |WW(t)|^2 = |coefficient|^2 exp(-Gamma t) identically.
    """
    return pole_part_amplitude(pole, coefficient, times)


def background_amplitude(model, phi, times, pole=None, coefficient=None):
    """background(t) = A(t) - pole_part(t), the non-exponential remainder."""
    if pole is None:
        pole = find_resonance_pole(model)
    if coefficient is None:
        coefficient = gamow_coefficient(model, phi, pole=pole)
    amp = survival_amplitude_exact(phi, times)
    return amp - pole_part_amplitude(pole, coefficient, times)


def survival_decomposed(model, phi, times, pole=None):
    """Survival series with its exact-by-construction pole/background split."""
    t_arr = np.atleast_1d(np.asarray(times, dtype=float))
    deco = decompose_survival(model, phi, pole=pole)
    amp = survival_amplitude_exact(phi, t_arr)
    pole_vals = pole_part_amplitude(deco.pole, deco.coefficient, t_arr)
    return SurvivalSeries(
        times=t_arr,
        amplitude=amp,
        pole_part=pole_vals,
        background_part=amp - pole_vals,
        decomposition=deco,
    )


# ---------------------------------------------------------------------------
# line-shape fit


def fit_lorentzian(energies, density, window_hwhm=4.0):
    """Least-squares Lorentzian h * g^2 / ((E-c)^2 + g^2) near the peak.

    The fit window is |E - peak| <= window_hwhm half-widths, with the
    half-width first estimated from the sampled half-maximum crossings.
    Returns (center, fwhm, height).
    """
    e = np.asarray(energies, dtype=float)
    d = np.asarray(density, dtype=float)
    if e.shape != d.shape or e.ndim != 1 or e.size < 16:
        raise ValueError("need matching 1-d arrays with >= 16 samples")
    peak = int(np.argmax(d))
    c0, h0 = e[peak], d[peak]
    above = d >= 0.5 * h0
    lo = peak
    while lo > 0 and above[lo - 1]:
        lo -= 1
    hi = peak
    while hi < e.size - 1 and above[hi + 1]:
        hi += 1
    hwhm0 = 0.5 * max(e[hi] - e[lo], e[1] - e[0])

    def lorentz(x, h, c, g):
        return h * g**2 / ((x - c) ** 2 + g**2)

    sel = np.abs(e - c0) <= window_hwhm * hwhm0
    if sel.sum() < 8:
        raise InsufficientSampling(
            f"only {int(sel.sum())} samples within the fit window"
        )
    params, _ = curve_fit(lorentz, e[sel], d[sel], p0=[h0, c0, hwhm0])
    h, c, g = params
    return float(c), float(2.0 * abs(g)), float(h)


# ---------------------------------------------------------------------------
# rotated-ray cross-check for the discrete state


def _ray_nodes(model, theta, nodes_per_panel=24):
    s = model.form_factor.scale
    top = max(80.0 * s, model.omega_max + 2.0 * s)
    edges = [0.0]
    e = 1e-4 * s
    while e < top:
        edges.append(e)
        e *= 2.0
    edges.append(top)
    edges = np.asarray(edges)
    gx, gw = np.polynomial.legendre.leggauss(nodes_per_panel)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    x = (mid[:, None] + half[:, None] * gx[None, :]).ravel()
    w = (half[:, None] * gw[None, :]).ravel()
    return x, w


def background_amplitude_ray(model, pole, times, theta=np.pi / 4):
    """Background of the discrete state via a rotated integration ray.

    The survival integral is deformed onto the ray z = x exp(-i theta);
    the swept resonance pole contributes the closed-form pole term, and
    the leftover ray integral is the background.  Non-oscillatory, fully
    independent of the sampled-state route, but available only for the
    discrete state where the continued density
    lam^2 F(z) / (D_II(z) D(z)) is known in closed form.  theta = pi/4
    keeps clear of the RATIONAL form-factor poles at -i*scale.
    """
    if not 0.0 < theta < np.pi / 2 + 1e-12:
        raise ValueError(f"ray angle must lie in (0, pi/2], got {theta}")
    t_arr = np.atleast_1d(np.asarray(times, dtype=float))
    if np.any(t_arr < 0):
        raise NegativeTime("ray background defined for t >= 0")
    lam2 = model.coupling**2
    phase = np.exp(-1j * theta)
    x, w = _ray_nodes(model, theta)
    zs = x * phase
    dens = np.empty(zs.shape, dtype=complex)
    for i, z in enumerate(zs):
        d_first = resolvent_denominator(model, z, FIRST)
        f_z = complex(model.form_factor.strength_analytic(z))
        d_second = d_first + 2j * np.pi * lam2 * f_z
        dens[i] = lam2 * f_z / (d_second * d_first)
    out = np.empty(t_arr.shape, dtype=complex)
    for k, t in enumerate(t_arr):
        out[k] = phase * np.sum(w * dens * np.exp(-1j * zs * t))
    return out


# ---------------------------------------------------------------------------
# deviation metrics


def _slope_fit(t, y):
    design = np.column_stack([np.ones_like(t), t])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return coef


def deviation_metrics(series):
    """Quantify the departures of a survival series from pure decay.

    gamma_fit: least-squares slope of log |A|^2 on [0.5, 3]/gamma_fit
    (self-consistently estimated from the series itself).
    short_time_exponent: p from 1 - |A|^2 ~ c t^p on (0, 0.01/gamma].
    background_fraction: |background(0)| / |A(0)|.
    crossover_time: first sampled t with |background| > |pole part|.
    """
    t = series.times
    a = np.abs(series.amplitude)
    if t.size < 100:
        raise InsufficientSampling(f"need >= 100 samples, got {t.size}")
    if not np.all(np.diff(t) > 0) or t[0] != 0.0:
        raise InsufficientSampling("times must increase strictly from 0")
    # crude width from the first e-folding of |A|^2, then one refinement
    below = np.nonzero(a**2 <= np.exp(-1.0))[0]
    if below.size == 0:
        raise InsufficientSampling("series never reaches the first e-folding")
    gamma_est = 1.0 / t[below[0]]
    for _ in range(2):
        mask = (t >= 0.5 / gamma_est) & (t <= 3.0 / gamma_est) & (a > 0)
        if mask.sum() < 10:
            raise InsufficientSampling(
                "fewer than 10 samples in the decay-fit window"
            )
        coef = _slope_fit(t[mask], np.log(a[mask] ** 2))
        gamma_fit = -coef[1]
        if gamma_fit <= 0:
            raise InsufficientSampling("no decaying trend in the fit window")
        gamma_est = gamma_fit
    if t[-1] < 2.9 / gamma_fit:
        raise InsufficientSampling(
            f"series ends at {t[-1]:.3g}, below 3/gamma = {3.0 / gamma_fit:.3g}"
        )
    short = (t > 0) & (t <= 0.01 / gamma_fit)
    y = 1.0 - a**2
    usable = short & (y > 1e-13)
    if usable.sum() < 5:
        raise InsufficientSampling(
            "need >= 5 usable samples in (0, 0.01/gamma] for the short-time fit"
        )
    coef = _slope_fit(np.log(t[usable]), np.log(y[usable]))
    exponent = float(coef[1])
    frac = float(np.abs(series.background_part[0]) / max(a[0], 1e-300))
    over = np.abs(series.background_part) > np.abs(series.pole_part)
    over[0] = False
    idx = np.nonzero(over)[0]
    crossover = float(t[idx[0]]) if idx.size else None
    return DeviationMetrics(
        gamma_fit=float(gamma_fit),
        short_time_exponent=exponent,
        background_fraction=frac,
        crossover_time=crossover,
    )
