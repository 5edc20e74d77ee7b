"""Friedrichs model: one discrete level coupled to a half-line continuum.

Hamiltonian (hbar = 1 throughout):

    H = omega0 |1><1| + int_0^inf dw w |w><w|
        + coupling * int_0^inf dw f(w) (|1><w| + |w><1|)

All spectral information about the decay of |1> is encoded in the
denominator of the reduced resolvent <1|(z - H)^{-1}|1> = 1/D(z),

    D(z) = z - omega0 - coupling^2 * int_0^inf dw F(w) / (z - w)

with F(w) = |f(w)|^2 the coupling strength.  D is analytic off the cut
[0, inf).  Conventions used everywhere in this package:

  * The physical boundary value is the limit from above,
    D(E + i0) = E - omega0 - coupling^2 * PV - i*0-term, concretely
    D(E + i0) = E - omega0 - coupling^2 * P(E) + i*pi*coupling^2*F(E)
    where P(E) is the principal-value integral.
  * The second sheet is the continuation of that boundary value through
    the cut into the lower half plane:
        D_II(z) = D(z) + 2*pi*i * coupling^2 * F(z),   Im z <= 0,
    with F(z) the analytic continuation of the strength.  Its zero
    z_R = E_R - i*Gamma/2 (Gamma > 0) is the resonance pole; to lowest
    order Gamma = 2*pi*coupling^2*F(omega0), the golden-rule width.
  * The mirrored continuation (lower boundary value pushed into the
    upper half plane) carries the opposite sign, -2*pi*i, and vanishes
    at the conjugate point conj(z_R).

The principal value is computed by subtracting the singularity:

    P(E) = int_0^B [F(w) - F(E)]/(E - w) dw + F(E)*log(E/(B - E))
           + int_B^inf F(w)/(E - w) dw

The first integrand is the (smooth) divided difference of F, so a fixed
composite Gauss-Legendre rule evaluates it to near machine precision and
vectorizes over whole energy grids.  B sits two form-factor scales above
the nominal truncation so grid energies never touch the log endpoint.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from .errors import (
    BranchCutEvaluation,
    MultiplePoles,
    NoPoleFound,
    QuadratureFailure,
)

FIRST = "first"
SECOND = "second"

EXP = "EXP"
RATIONAL = "RATIONAL"

# grid-energy truncation in units of the form-factor scale: strength tail
# beyond this point is below ~1e-12 of the full integral for each family
_OMEGA_MAX_FACTOR = {EXP: 40.0, RATIONAL: 200.0}

_CUT_EPS = 1e-12
_NODES_PER_PANEL = 32
_NODES_PER_PANEL_CHECK = 48


@dataclass(frozen=True)
class FormFactor:
    """Coupling strength family.

    family "EXP":      F(w) = (w/scale) * exp(-w/scale), entire in w.
    family "RATIONAL": F(w) = w / (1 + (w/scale)^2)^2, poles at +-i*scale.
    """

    family: str = EXP
    scale: float = 1.0

    def __post_init__(self):
        if self.family not in (EXP, RATIONAL):
            raise ValueError(f"unknown form factor family {self.family!r}")
        if not (self.scale > 0 and np.isfinite(self.scale)):
            raise ValueError(f"scale must be positive, got {self.scale!r}")

    @property
    def omega_max(self):
        """Upper end of the physically resolved energy window."""
        return _OMEGA_MAX_FACTOR[self.family] * self.scale

    def strength(self, omega):
        """F(w) = |f(w)|^2 for real w >= 0 (vectorized)."""
        w = np.asarray(omega, dtype=float)
        if np.any(w < 0):
            raise ValueError("strength defined on w >= 0 only")
        return self._strength_any(w)

    def strength_analytic(self, z):
        """Analytic continuation F(z) of the strength off the real axis."""
        return self._strength_any(np.asarray(z, dtype=complex))

    def _strength_any(self, w):
        s = self.scale
        if self.family == EXP:
            return (w / s) * np.exp(-w / s)
        return w / (1.0 + (w / s) ** 2) ** 2

    def strength_derivative(self, omega):
        """dF/dw on the real axis, used by the divided-difference guard."""
        w = np.asarray(omega, dtype=float)
        s = self.scale
        if self.family == EXP:
            return (1.0 - w / s) * np.exp(-w / s) / s
        u = (w / s) ** 2
        return (1.0 - 3.0 * u) / (1.0 + u) ** 3


@dataclass(frozen=True)
class FriedrichsModel:
    """Discrete level at omega0 > 0 embedded in the continuum [0, inf)."""

    omega0: float
    coupling: float
    form_factor: FormFactor = FormFactor()

    def __post_init__(self):
        if not (self.omega0 > 0 and np.isfinite(self.omega0)):
            raise ValueError(f"omega0 must be positive, got {self.omega0!r}")
        if not (self.coupling >= 0 and np.isfinite(self.coupling)):
            raise ValueError(f"coupling must be >= 0, got {self.coupling!r}")
        if self.omega0 >= self.form_factor.omega_max:
            raise ValueError(
                f"omega0={self.omega0} outside the resolved window "
                f"[0, {self.form_factor.omega_max}]"
            )

    @property
    def omega_max(self):
        return self.form_factor.omega_max


@dataclass(frozen=True)
class ComplexPole:
    """Second-sheet resonance pole z = e_r - i*gamma/2 and its residue."""

    e_r: float
    gamma: float
    residue: complex

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma!r}")

    @property
    def position(self):
        return complex(self.e_r, -0.5 * self.gamma)


# ---------------------------------------------------------------------------
# fixed Gauss-Legendre rules, cached per form factor


def _split_point(ff):
    # keep grid energies (<= omega_max) strictly below the log endpoint
    return ff.omega_max + 2.0 * ff.scale


def _panel_edges(ff):
    s, top = ff.scale, _split_point(ff)
    edges = [0.0, 0.25 * s, 0.5 * s]
    e = 1.0 * s
    while e < top:
        edges.append(e)
        e *= 2.0
    edges.append(top)
    return np.asarray(edges)


def _gauss_rule(ff, nodes_per_panel):
    x, w = np.polynomial.legendre.leggauss(nodes_per_panel)
    edges = _panel_edges(ff)
    a, b = edges[:-1], edges[1:]
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return nodes, wts


def _tail_rule(ff, n=64):
    # transformed tail int_B^inf F(w)/(z-w) dw with u = 1/w on (0, 1/B]
    x, w = np.polynomial.legendre.leggauss(n)
    top = 1.0 / _split_point(ff)
    nodes = 0.5 * top * (x + 1.0)
    wts = 0.5 * top * w
    return nodes, wts


_RULE_CACHE = {}


def _rules(ff):
    key = (ff.family, ff.scale)
    if key not in _RULE_CACHE:
        _RULE_CACHE[key] = {
            "main": _gauss_rule(ff, _NODES_PER_PANEL),
            "check": _gauss_rule(ff, _NODES_PER_PANEL_CHECK),
            "tail": _tail_rule(ff),
        }
    return _RULE_CACHE[key]


def _tail_integral(ff, z):
    """int_B^inf F(w)/(z - w) dw for z (array ok) away from [B, inf)."""
    u, wu = _rules(ff)["tail"]
    fvals = ff._strength_any(1.0 / u)
    z = np.asarray(z)
    integ = fvals * wu / (u * u)
    return (integ / (z[..., None] - 1.0 / u)).sum(axis=-1)


def _pv_dispersion_grid(ff, energies, rule="main"):
    """Principal-value integral P(E) on a grid 0 <= E <= omega_max.

    Subtract-the-singularity form; the divided-difference integrand is
    smooth, so the fixed rule is near machine accurate.  Vectorized and
    chunked to keep the (n_E, n_nodes) broadcast below ~100 MB.
    """
    x, w = _rules(ff)[rule]
    top = _split_point(ff)
    e_arr = np.asarray(energies, dtype=float)
    e_flat = np.atleast_1d(e_arr).ravel()
    if e_flat.size and (e_flat.min() < 0 or e_flat.max() > ff.omega_max):
        raise ValueError(
            f"boundary energies must lie in [0, {ff.omega_max}], "
            f"got range [{e_flat.min()}, {e_flat.max()}]"
        )
    f_nodes = ff._strength_any(x)
    out = np.empty_like(e_flat)
    chunk = max(1, int(8e6 // max(x.size, 1)))
    for lo in range(0, e_flat.size, chunk):
        e = e_flat[lo : lo + chunk]
        f_e = ff._strength_any(e)
        denom = e[:, None] - x[None, :]
        # divided difference (F(x)-F(E))/(E-x); exact node hits take -F'(E)
        tiny = np.abs(denom) < 1e-13 * ff.scale
        safe = np.where(tiny, 1.0, denom)
        quot = (f_nodes[None, :] - f_e[:, None]) / safe
        if np.any(tiny):
            dmat = np.broadcast_to(
                -ff.strength_derivative(e)[:, None], quot.shape
            )
            quot = np.where(tiny, dmat, quot)
        main = quot @ w
        with np.errstate(divide="ignore", invalid="ignore"):
            logterm = np.where(
                f_e > 0.0, f_e * np.log(e / (top - e)), 0.0
            )
        out[lo : lo + chunk] = main + logterm + _tail_integral(ff, e).real
    return out.reshape(e_arr.shape) if e_arr.shape else out[0]


_CERTIFIED = set()


def _certify_rules(ff):
    """One-time cross-check of the fixed rule against its refined version."""
    key = (ff.family, ff.scale)
    if key in _CERTIFIED:
        return
    probes = ff.scale * np.array([0.3, 1.0, 3.0]) + 0.0
    probes = probes[probes < ff.omega_max]
    a = _pv_dispersion_grid(ff, probes, rule="main")
    b = _pv_dispersion_grid(ff, probes, rule="check")
    scalebar = np.maximum(np.abs(b), 1e-3 * ff.scale)
    if np.any(np.abs(a - b) > 1e-10 * scalebar):
        raise QuadratureFailure(
            f"fixed dispersion rule failed refinement check for {ff}"
        )
    _CERTIFIED.add(key)


# ---------------------------------------------------------------------------
# scalar complex dispersion integral (adaptive; pole finder path)


def _quad(fn, a, b, points=None):
    # ignore QUADPACK roundoff complaints and gate on its error estimate
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(
            fn,
            a,
            b,
            points=points,
            limit=400,
            epsabs=1e-13,
            epsrel=1e-12,
            full_output=1,
        )
    val, err = out[0], out[1]
    if err > 1e-9 * max(1.0, abs(val)):
        raise QuadratureFailure(
            f"quadrature error estimate {err:.2e} too large for value {val:.6e}"
        )
    return val


def _quad_complex(fn, a, b, points=None):
    re = _quad(lambda t: fn(t).real, a, b, points=points)
    im = _quad(lambda t: fn(t).imag, a, b, points=points)
    return complex(re, im)


def _dispersion_complex(ff, z):
    """int_0^inf F(w)/(z - w) dw for scalar z off the cut.

    Near the cut the constant and linear parts of F at Re z are removed
    and integrated in closed form, leaving an integrand whose sharp
    width-|Im z| feature has amplitude O(F'' * |Im z|), so the adaptive
    rule stays accurate uniformly in the distance to the axis.
    """
    z = complex(z)
    top = _split_point(ff)
    x = z.real
    tail = complex(_tail_integral(ff, np.asarray(z, dtype=complex)))
    near_axis = 0.0 < x < ff.omega_max and abs(z.imag) < ff.scale
    if near_axis:
        f_x = float(ff.strength(x))
        df_x = float(ff.strength_derivative(x))

        def subtracted(w):
            return (ff._strength_any(np.float64(w)) - f_x - df_x * (w - x)) / (z - w)

        main = _quad_complex(subtracted, 0.0, top, points=[x])
        # int_0^top dw/(z-w) along a horizontal path never crosses the
        # principal log cut while Im z != 0
        logterm = np.log(z) - np.log(z - top)
        linterm = -top + (z - x) * logterm
        return main + f_x * logterm + df_x * linterm + tail
    return _quad_complex(lambda w: ff._strength_any(np.float64(w)) / (z - w), 0.0, top) + tail


def _dispersion_negative_axis(ff, x):
    """int_0^inf F(w)/(x - w) dw for real x < 0.

    Smooth but with a width-|x| boundary layer at w ~ |x|; a subdivision
    hint there plus a relaxed error gate (the bound-state bisection only
    needs ~1e-7) keeps this robust arbitrarily close to the edge.
    """
    top = _split_point(ff)
    pts = [min(-x, 0.5 * top)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(
            lambda w: float(ff._strength_any(np.float64(w)) / (x - w)),
            0.0,
            top,
            points=pts,
            limit=400,
            epsabs=1e-12,
            epsrel=1e-11,
            full_output=1,
        )
    val, err = out[0], out[1]
    if err > 1e-7 * max(abs(val), 1e-3):
        raise QuadratureFailure(
            f"negative-axis dispersion error estimate {err:.2e} at x={x}"
        )
    return val + float(_tail_integral(ff, np.asarray(complex(x))).real)


# ---------------------------------------------------------------------------
# resolvent denominator on both sheets


def resolvent_denominator_boundary(model, energies, side=+1):
    """Boundary value D(E +- i0) on the cut, vectorized over energies.

    side=+1 is the physical limit from above; side=-1 from below.
    """
    ff = model.form_factor
    _certify_rules(ff)
    e = np.asarray(energies, dtype=float)
    lam2 = model.coupling**2
    pv = _pv_dispersion_grid(ff, e)
    return (
        e
        - model.omega0
        - lam2 * pv
        + side * 1j * np.pi * lam2 * ff._strength_any(e)
    )


def resolvent_denominator(model, z, sheet=FIRST):
    """Reduced-resolvent denominator D(z) on the first or second sheet.

    sheet="first": analytic off the cut [0, inf); evaluation within
    1e-12 of the cut raises BranchCutEvaluation (use the boundary-value
    helper or the second sheet instead).

    sheet="second": the lower half plane continuation of the upper
    boundary value, D(z) + 2*pi*i*coupling^2*F(z); meaningful only for
    Im z <= 0.  On the axis it coincides with the limit from above.
    """
    z = complex(z)
    ff = model.form_factor
    lam2 = model.coupling**2
    if sheet == FIRST:
        on_cut = abs(z.imag) <= _CUT_EPS and z.real >= -_CUT_EPS
        if on_cut:
            raise BranchCutEvaluation(
                f"first-sheet evaluation at z={z} is on the cut [0, inf); "
                "use the boundary-value helper or sheet='second'"
            )
        if z.imag == 0.0:
            val = complex(_dispersion_negative_axis(ff, z.real))
        else:
            val = _dispersion_complex(ff, z)
        return z - model.omega0 - lam2 * val
    if sheet == SECOND:
        if z.imag > _CUT_EPS:
            raise ValueError(
                f"second sheet is the lower half plane continuation; got Im z={z.imag}"
            )
        if abs(z.imag) <= _CUT_EPS:
            if z.real < 0:
                raise ValueError(
                    "second sheet touches the axis only across the cut (Re z >= 0)"
                )
            return complex(resolvent_denominator_boundary(model, z.real, side=+1))
        first = z - model.omega0 - lam2 * _dispersion_complex(ff, z)
        return first + 2j * np.pi * lam2 * ff.strength_analytic(z)
    raise ValueError(f"unknown sheet {sheet!r}")


def resolvent_denominator_mirror(model, z):
    """Upper half plane continuation of the lower boundary value.

    Carries the -2*pi*i continuation term; vanishes at conj(z_R).
    """
    z = complex(z)
    ff = model.form_factor
    lam2 = model.coupling**2
    if z.imag < -_CUT_EPS:
        raise ValueError(
            f"mirror continuation is the upper half plane; got Im z={z.imag}"
        )
    if abs(z.imag) <= _CUT_EPS:
        if z.real < 0:
            raise ValueError("mirror continuation touches the axis only for Re z >= 0")
        return complex(resolvent_denominator_boundary(model, z.real, side=-1))
    first = z - model.omega0 - lam2 * _dispersion_complex(ff, z)
    return first - 2j * np.pi * lam2 * ff.strength_analytic(z)


# ---------------------------------------------------------------------------
# resonance pole


def golden_rule_width(model):
    """Lowest-order decay width 2*pi*coupling^2*F(omega0)."""
    return float(
        2.0 * np.pi * model.coupling**2 * model.form_factor.strength(model.omega0)
    )


_NEWTON_STEPS = 40
_FD_STEP = 1e-6


def _second_sheet(model, z):
    return resolvent_denominator(model, z, sheet=SECOND)


def _newton_root(model, z0):
    z = complex(z0)
    for _ in range(_NEWTON_STEPS):
        h = _FD_STEP * (1.0 + abs(z))
        f0 = _second_sheet(model, z)
        fp = (_second_sheet(model, z + h) - _second_sheet(model, z - h)) / (2.0 * h)
        if fp == 0:
            return None
        step = f0 / fp
        z = z - step
        if z.imag > -1e-15:
            z = complex(z.real, min(z.imag, -1e-9 * model.omega0))
        if abs(step) < 1e-13 * (1.0 + abs(z)):
            return z
    return None


def find_resonance_pole(model):
    """Locate the second-sheet zero z_R = E_R - i*Gamma/2 and its residue.

    Newton iteration from the golden-rule seed plus four perturbed seeds;
    accepts only roots inside Re z in [omega0/2, 2*omega0] and
    Im z in [-omega0, 0).  residue = 1/D_II'(z_R).
    """
    w0 = model.omega0
    if model.coupling == 0.0:
        return ComplexPole(e_r=w0, gamma=0.0, residue=1.0 + 0.0j)
    width = np.pi * model.coupling**2 * float(model.form_factor.strength(w0))
    z0 = complex(w0, -max(width, 1e-8 * w0))
    seeds = [
        z0,
        z0 + 0.05 * w0,
        z0 - 0.05 * w0,
        complex(z0.real, 0.5 * z0.imag),
        complex(z0.real, 2.0 * z0.imag),
    ]
    roots = []
    for seed in seeds:
        try:
            root = _newton_root(model, seed)
        except QuadratureFailure:
            continue
        if root is None:
            continue
        if not (0.5 * w0 <= root.real <= 2.0 * w0 and -w0 <= root.imag < 0.0):
            continue
        if abs(_second_sheet(model, root)) > 1e-10:
            continue
        if not any(abs(root - r) < 1e-8 * w0 for r in roots):
            roots.append(root)
    if not roots:
        raise NoPoleFound(
            f"no second-sheet zero inside the window for {model}"
        )
    if len(roots) > 1:
        raise MultiplePoles(f"distinct zeros {roots} inside the search window")
    z_r = roots[0]
    h = _FD_STEP * (1.0 + abs(z_r))
    deriv = (_second_sheet(model, z_r + h) - _second_sheet(model, z_r - h)) / (2.0 * h)
    return ComplexPole(e_r=z_r.real, gamma=-2.0 * z_r.imag, residue=1.0 / deriv)


# ---------------------------------------------------------------------------
# spectral density and bound state


def spectral_density(model, energies):
    """|<E|1>|^2 = coupling^2 F(E) / |D(E+i0)|^2 on 0 <= E <= omega_max.

    Integrates to 1 over the continuum when no bound state is present.
    """
    e = np.asarray(energies, dtype=float)
    if np.any(e < 0):
        raise ValueError("spectral density defined for E >= 0")
    lam2 = model.coupling**2
    denom = resolvent_denominator_boundary(model, e)
    return lam2 * model.form_factor.strength(e) / np.abs(denom) ** 2


def bound_state_energy(model):
    """Energy of the discrete eigenvalue below the continuum, if any.

    D restricted to the negative real axis is strictly increasing, so a
    bound state exists iff D(0-) > 0, i.e. coupling^2 * int F(w)/w dw
    exceeds omega0.  Returns None when there is no bound state.
    """
    ff = model.form_factor
    lam2 = model.coupling**2
    if lam2 == 0.0:
        return None
    x, w = _rules(ff)["main"]
    over_omega = float((ff._strength_any(x) / x) @ w)
    u, wu = _rules(ff)["tail"]
    over_omega += float(((ff._strength_any(1.0 / u) * u) / (u * u)) @ wu)
    d_at_zero = -model.omega0 + lam2 * over_omega
    if d_at_zero <= 0.0:
        return None

    def d_real(xval):
        return (resolvent_denominator(model, complex(xval, 0.0), sheet=FIRST)).real

    lo = -(model.omega0 + lam2 * over_omega + ff.scale)
    hi = -1e-6 * ff.scale
    if d_real(hi) <= 0.0:
        # zero squeezed within 1e-6*scale of the continuum edge
        return float(hi)
    return float(optimize.brentq(d_real, lo, hi, xtol=1e-13))
