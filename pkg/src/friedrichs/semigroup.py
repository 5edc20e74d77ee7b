"""One-sided evolution laws for the resonance (Gamow) functionals.

The pole pair z_R = E_R - i*Gamma/2 (decaying) and z_R* = E_R + i*Gamma/2
(growing) evolves under two published conventions that agree on the
future decay law but split the time axis differently:

                 domain    factor                          test space
    BOHM
      DECAYING   t >= 0    exp(-i E_R t) exp(-Gamma t/2)   upper Hardy
      GROWING    t <= 0    exp(-i E_R t) exp(+Gamma t/2)   lower Hardy
    BRUSSELS_AUSTIN
      DECAYING   t >= 0    exp(-i E_R t) exp(-Gamma t/2)   lower Hardy
      GROWING    t <= 0    exp(+i E_R t) exp(+Gamma t/2)   upper Hardy

The roles of the Hardy class spaces are reversed between the two
conventions, and the growing-branch phase differs in sign between the
two printed laws; both are reproduced exactly as printed rather than
reconciled (the moduli agree, so every observable decay rate is
identical).  The first convention reads both semigroups as
future-directed (t < 0 describes the forming/growing state before the
preparation completes at t = 0); the second reads the t < 0 semigroup
as evolving states into the past.

Evaluating a branch outside its half-line raises
TimeOutsideSemigroupDomain: the evolution is a semigroup, replacement
of t by -t is not defined, and silently clamping or continuing would
erase exactly the irreversibility the construction exists to exhibit.
A separate diagnostic helper computes the formal continuation (which
blows up like exp(+Gamma|t|/2)) for illustration only.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, replace

from .core import ComplexPole, find_resonance_pole
from .errors import TimeOutsideSemigroupDomain

DECAYING = "DECAYING"
GROWING = "GROWING"
BOHM = "BOHM"
BRUSSELS_AUSTIN = "BRUSSELS_AUSTIN"

_KINDS = (DECAYING, GROWING)
_CONVENTIONS = (BOHM, BRUSSELS_AUSTIN)


@dataclass(frozen=True)
class GamowFunctional:
    """A pole functional: which pole it sits on and its current amplitude."""

    pole: ComplexPole
    kind: str
    amplitude: complex = 1.0 + 0.0j

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        object.__setattr__(self, "amplitude", complex(self.amplitude))

    @property
    def eigenvalue(self):
        """E_R - i*Gamma/2 for DECAYING, its conjugate for GROWING."""
        z = self.pole.position
        return z if self.kind == DECAYING else z.conjugate()


def _check_convention(convention):
    if convention not in _CONVENTIONS:
        raise ValueError(
            f"convention must be one of {_CONVENTIONS}, got {convention!r}"
        )


def evolution_factor(pole, kind, t, convention=BOHM):
    """Multiplicative evolution factor for one branch at time t.

    Raises TimeOutsideSemigroupDomain when t lies outside the branch's
    half-line (DECAYING: t >= 0, GROWING: t <= 0, both conventions).
    """
    _check_convention(convention)
    if kind == DECAYING:
        if t < 0:
            raise TimeOutsideSemigroupDomain(
                f"decaying branch under {convention} is a semigroup on "
                f"t >= 0; t = {t} would need the (nonexistent) inverse"
            )
        return cmath.exp((-1j * pole.e_r - 0.5 * pole.gamma) * t)
    if kind == GROWING:
        if t > 0:
            raise TimeOutsideSemigroupDomain(
                f"growing branch under {convention} is a semigroup on "
                f"t <= 0; t = {t} would need the (nonexistent) inverse"
            )
        phase = 1j * pole.e_r if convention == BRUSSELS_AUSTIN else -1j * pole.e_r
        return cmath.exp((phase + 0.5 * pole.gamma) * t)
    raise ValueError(f"kind must be one of {_KINDS}, got {kind!r}")


def evolve_gamow(g, t, convention=BOHM):
    """Evolve a Gamow functional by t within its legal time domain."""
    factor = evolution_factor(g.pole, g.kind, t, convention)
    return replace(g, amplitude=g.amplitude * factor)


def diagnostic_extension_factor(pole, kind, t, convention=BOHM):
    """Formal evolution factor with the domain check removed.

    Outside the legal domain the modulus grows like exp(+Gamma|t|/2);
    that blowup is the reason the physical operation refuses such t.
    Diagnostic use only, never called by the evolution itself.
    """
    _check_convention(convention)
    if kind == DECAYING:
        return cmath.exp((-1j * pole.e_r - 0.5 * pole.gamma) * t)
    if kind == GROWING:
        phase = 1j * pole.e_r if convention == BRUSSELS_AUSTIN else -1j * pole.e_r
        return cmath.exp((phase + 0.5 * pole.gamma) * t)
    raise ValueError(f"kind must be one of {_KINDS}, got {kind!r}")


def semigroup_residual(convention, kind, t1, t2, pole):
    """|U(t2)U(t1) - U(t1+t2)| applied to a unit functional.

    t1 and t2 must share a sign (or vanish); a mixed-sign pair is a
    domain violation, not a residual-zero identity, because the
    semigroup has no inverse element.
    """
    if (t1 > 0 > t2) or (t1 < 0 < t2):
        raise TimeOutsideSemigroupDomain(
            f"mixed-sign composition ({t1}, {t2}): the inverse does not "
            "exist in the semigroup"
        )
    g = GamowFunctional(pole, kind, 1.0)
    two_step = evolve_gamow(evolve_gamow(g, t1, convention), t2, convention)
    one_step = evolve_gamow(g, t1 + t2, convention)
    return abs(two_step.amplitude - one_step.amplitude)


_BRANCH_TABLE = {
    BOHM: [
        {
            "kind": DECAYING,
            "domain": "t >= 0",
            "direction_label": "future-directed (decaying states)",
            "hardy_space": "upper",
        },
        {
            "kind": GROWING,
            "domain": "t <= 0",
            "direction_label": "future-directed (growing/forming states)",
            "hardy_space": "lower",
        },
    ],
    BRUSSELS_AUSTIN: [
        {
            "kind": DECAYING,
            "domain": "t >= 0",
            "direction_label": "future-directed (decaying states)",
            "hardy_space": "lower",
        },
        {
            "kind": GROWING,
            "domain": "t <= 0",
            "direction_label": "past-directed (excitations before t = 0)",
            "hardy_space": "upper",
        },
    ],
}


def convention_report(model, pole=None):
    """Structured comparison of the two conventions for one model.

    The observable quantity, the decay rate on the future-directed
    decaying branch, is extracted per convention from the evolution
    factor itself so that the reported equality is a property of the
    implementation, not an assumption.
    """
    if pole is None:
        pole = find_resonance_pole(model)
    gamma = {}
    for conv in _CONVENTIONS:
        factor = evolution_factor(pole, DECAYING, 1.0, conv)
        gamma[conv] = -2.0 * cmath.log(abs(factor)).real
    conventions = [
        {"convention": conv, "branches": list(_BRANCH_TABLE[conv])}
        for conv in _CONVENTIONS
    ]
    return {
        "pole": {"e_r": pole.e_r, "gamma": pole.gamma},
        "conventions": conventions,
        "roles_reversed": True,
        "gamma_decaying_future": gamma,
        "rationale": (
            "The roles of the Hardy class spaces are reversed between the "
            "two conventions, and the t < 0 semigroup is read as "
            "future-directed (forming states) in one and past-directed in "
            "the other; the future-directed decaying branch carries the "
            "same width Gamma in both, so no observable decay rate "
            "distinguishes them."
        ),
        "phase_note": (
            "The growing-branch phase is exp(-i E_R t) in one printed law "
            "and exp(+i E_R t) in the other; both are implemented exactly "
            "as printed since the moduli, and hence all decay rates, agree."
        ),
    }
