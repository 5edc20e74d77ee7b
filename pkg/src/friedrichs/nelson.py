"""Countable-norm tower on the oscillator basis and triplet classification.

Concrete rigging: the number basis {e_k} of the harmonic oscillator,
where the operator P^2 + Q^2 + 1 acts diagonally with eigenvalue
2k + 2 on level k.  The n-th scalar product weights each level by that
eigenvalue to the n-th power,

    (a, b)_n = sum_k conj(a_k) (2k+2)^n b_k,

and the norm tower ||.||_0 <= ||.||_1 <= ... separates three regimes:
sequences summable at every order (test vectors, PHI), sequences with
only the plain Hilbert norm (H_ONLY), and sequences whose own norms
diverge but which still pair finitely against every test vector
(PHI_DUAL_ONLY, where delta-like functionals live).

Membership of an infinite sequence is undecidable from finite data, so
classification is a falsifiable finite protocol: partial norm sums at a
doubling sequence of cutoffs.  A tail counts as settled when the last
increment is below 1e-8 of the total or the dyadic increments shrink
geometrically (ratio <= 0.85); it counts as divergent when the
increments hold steady or grow (ratio >= 0.95).  Anything between, or
a sweep whose ratio estimates straddle the two categories, raises
Inconclusive rather than guessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import Inconclusive, PairingDiverges

PHI = "PHI"
H_ONLY = "H_ONLY"
PHI_DUAL_ONLY = "PHI_DUAL_ONLY"

_STABLE_INCREMENT = 1e-8
_RATIO_STABLE = 0.85
_RATIO_DIVERGENT = 0.95
_DEFAULT_SWEEP = (16, 32, 64, 128, 256, 512)
_PAIRING_TAIL = 1e-10


@dataclass(frozen=True, eq=False)
class HermiteState:
    """Finite coefficient vector (c_0 ... c_K) in the oscillator basis."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if c.ndim != 1 or c.size < 1:
            raise ValueError("coeffs must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(c)):
            raise ValueError("coeffs must be finite")
        object.__setattr__(self, "coeffs", c)

    @property
    def cutoff(self):
        return self.coeffs.size - 1


@dataclass(frozen=True, eq=False)
class DualFunctional:
    """Coefficient functional: explicit finite list or a polynomial rule.

    The rule form has F_k = (k+1)**growth_order for every k, so it never
    truncates; pairings against it must certify their own tails.
    """

    coeffs: np.ndarray | None = None
    growth_order: float | None = None

    def __post_init__(self):
        if (self.coeffs is None) == (self.growth_order is None):
            raise ValueError("give exactly one of coeffs or growth_order")
        if self.coeffs is not None:
            c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
            if not np.all(np.isfinite(c)):
                raise ValueError("coeffs must be finite")
            object.__setattr__(self, "coeffs", c)

    @classmethod
    def polynomial(cls, order):
        return cls(growth_order=float(order))

    @classmethod
    def basis(cls, index):
        c = np.zeros(index + 1, dtype=complex)
        c[index] = 1.0
        return cls(coeffs=c)

    def coefficients(self, count):
        """First `count` coefficients as a vector."""
        if self.coeffs is not None:
            out = np.zeros(count, dtype=complex)
            m = min(count, self.coeffs.size)
            out[:m] = self.coeffs[:m]
            return out
        k = np.arange(count, dtype=float)
        return ((k + 1.0) ** self.growth_order).astype(complex)


def coherent_state(alpha, cutoff=40):
    """Truncated coherent state c_k = exp(-|a|^2/2) a^k / sqrt(k!).

    At cutoff >= 30 the dropped tail is far below 1e-6 for |alpha| <= 1,
    so no renormalization is applied.
    """
    c = np.empty(cutoff + 1, dtype=complex)
    c[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for k in range(1, cutoff + 1):
        c[k] = c[k - 1] * alpha / math.sqrt(k)
    return HermiteState(c)


def raise_state(s):
    """Apply the raising operator: (a^dag s)_k = sqrt(k) s_{k-1}."""
    out = np.zeros(s.coeffs.size + 1, dtype=complex)
    out[1:] = np.sqrt(np.arange(1, out.size)) * s.coeffs
    return HermiteState(out)


def _common(a, b):
    n = max(a.size, b.size)
    pa = np.zeros(n, dtype=complex)
    pb = np.zeros(n, dtype=complex)
    pa[: a.size] = a
    pb[: b.size] = b
    return pa, pb


def nelson_inner(a, b, n):
    """(a, b)_n = sum_k conj(a_k) (2k+2)^n b_k (finite sum)."""
    if n < 0 or n != int(n):
        raise ValueError(f"order n must be a nonnegative integer, got {n}")
    ca, cb = _common(a.coeffs, b.coeffs)
    weights = (2.0 * np.arange(ca.size) + 2.0) ** int(n)
    return complex(np.sum(np.conj(ca) * weights * cb))


def nelson_norm(s, n):
    """||s||_n = sqrt((s, s)_n); monotone nondecreasing in n."""
    return math.sqrt(max(nelson_inner(s, s, n).real, 0.0))


# ---------------------------------------------------------------------------
# classification


def _partial_norm_sums(coeff_fn, n, cutoffs):
    k = np.arange(cutoffs[-1], dtype=float)
    terms = np.abs(coeff_fn(cutoffs[-1])) ** 2 * (2.0 * k + 2.0) ** n
    cumulative = np.cumsum(terms)
    return np.array([cumulative[c - 1] for c in cutoffs])


def _tail_verdict(sums):
    """'stable', 'divergent', or None when the sweep does not decide."""
    d = np.diff(sums)
    total = max(sums[-1], 1e-300)
    if d[-1] <= _STABLE_INCREMENT * total:
        return "stable"
    if np.any(d[:-1] <= 0.0):
        # a dead stretch followed by growth: irregular sweep
        return None
    ratios = d[1:] / d[:-1]

    def category(r):
        if r <= _RATIO_STABLE:
            return "stable"
        if r >= _RATIO_DIVERGENT:
            return "divergent"
        return None

    last = category(ratios[-1])
    prev = category(ratios[-2]) if ratios.size >= 2 else last
    if last is not None and (prev == last or prev is None):
        return last
    return None


def _coefficient_source(candidate):
    if isinstance(candidate, HermiteState):
        f = DualFunctional(coeffs=candidate.coeffs)
        return f.coefficients
    if isinstance(candidate, DualFunctional):
        return candidate.coefficients
    f = DualFunctional(coeffs=np.asarray(candidate, dtype=complex))
    return f.coefficients


def classify_vector(candidate, n_max=3, k_sweep=_DEFAULT_SWEEP):
    """Place a coefficient sequence in the triplet: PHI, H_ONLY, or dual.

    candidate may be a HermiteState, a DualFunctional (explicit or
    growth rule), or a plain coefficient sequence.  Raises Inconclusive
    when the partial-sum sweep cannot separate convergence from
    divergence at these cutoffs.
    """
    if n_max < 3:
        raise ValueError(f"n_max must be >= 3, got {n_max}")
    cutoffs = tuple(int(c) for c in k_sweep)
    if len(cutoffs) < 3 or any(b <= a for a, b in zip(cutoffs, cutoffs[1:])):
        raise ValueError("k_sweep must be at least 3 increasing cutoffs")
    coeff_fn = _coefficient_source(candidate)
    verdicts = {}
    for n in range(n_max + 1):
        verdicts[n] = _tail_verdict(_partial_norm_sums(coeff_fn, n, cutoffs))
    if verdicts[0] == "divergent":
        # not normalizable; dual membership is decided by pairings
        probes = [coherent_state(1.0, cutoff=60), coherent_state(0.5, cutoff=60)]
        try:
            for probe in probes:
                dual_pairing(DualFunctional(coeffs=coeff_fn(cutoffs[-1])), probe)
        except PairingDiverges as exc:
            raise Inconclusive(
                "norm diverges and the probe pairing does too; the sequence "
                "fits none of the three classes at these cutoffs"
            ) from exc
        return PHI_DUAL_ONLY
    if verdicts[0] is None:
        raise Inconclusive(
            f"n = 0 norm sweep is undecided at cutoffs {cutoffs}"
        )
    tail = [verdicts[n] for n in range(1, n_max + 1)]
    if all(v == "stable" for v in tail):
        return PHI
    if any(v is None for v in tail):
        bad = [n for n in range(1, n_max + 1) if verdicts[n] is None]
        raise Inconclusive(f"norm sweep undecided at orders {bad}")
    return H_ONLY


def dual_pairing(functional, s):
    """<F, s> = sum_k conj(F_k) s_k with a certified tail.

    The sum runs over the state's coefficients (ascending k, fixed
    order).  The remaining tail is bounded by geometric extrapolation of
    the trailing nonzero terms; if the terms are still growing when the
    data runs out the pairing is refused with PairingDiverges.
    """
    n_terms = s.coeffs.size
    f_vec = (
        functional.coefficients(n_terms)
        if isinstance(functional, DualFunctional)
        else np.asarray(functional, dtype=complex)[:n_terms]
    )
    terms = np.conj(f_vec[: s.coeffs.size]) * s.coeffs
    total = complex(np.sum(terms))
    mags = np.abs(terms)
    nonzero = np.nonzero(mags > 0.0)[0]
    if nonzero.size <= 1:
        return total
    m, m_prev = nonzero[-1], nonzero[-2]
    ratio = (mags[m] / mags[m_prev]) ** (1.0 / (m - m_prev))
    scale = max(abs(total), 1.0)
    if ratio >= 1.0:
        raise PairingDiverges(
            f"terms still growing at k = {m} (ratio {ratio:.3f}); "
            "no Cauchy tail within the available coefficients"
        )
    tail_bound = mags[m] * ratio / (1.0 - ratio)
    if tail_bound > _PAIRING_TAIL * scale:
        raise PairingDiverges(
            f"tail bound {tail_bound:.3e} exceeds {_PAIRING_TAIL} x scale; "
            "extend the state's coefficients"
        )
    return total
