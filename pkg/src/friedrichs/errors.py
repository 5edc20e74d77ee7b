"""Exception and warning types shared across the package.

Numerical routines raise rather than return junk: every failure mode that a
caller could plausibly want to branch on gets its own class.  All exceptions
derive from FriedrichsError so `except FriedrichsError` catches any
domain-level failure without swallowing programming errors.
"""


class FriedrichsError(Exception):
    """Base class for all domain-level failures."""


class BranchCutEvaluation(FriedrichsError):
    """First-sheet resolvent function evaluated on or too close to the cut."""


class QuadratureFailure(FriedrichsError):
    """An adaptive or fixed-rule integral did not reach its error target."""


class NoPoleFound(FriedrichsError):
    """Newton iteration found no resonance zero inside the search window."""


class MultiplePoles(FriedrichsError):
    """More than one distinct zero converged inside the search window."""


class InvalidGrid(FriedrichsError):
    """Energy grid is not strictly increasing, too short, or mismatched."""


class NotNormalized(FriedrichsError):
    """Wavefunction norm^2 differs from 1 beyond tolerance."""


class NegativeTime(FriedrichsError):
    """Evolution requested at t < 0 without the explicit opt-in."""


class ContinuationFailure(FriedrichsError):
    """Rational continuation of sampled data diverged near the target point."""


class InsufficientSampling(FriedrichsError):
    """Time series too sparse or too short for the requested fit."""


class TimeOutsideSemigroupDomain(FriedrichsError):
    """Semigroup evolution requested outside its one-sided time domain."""


class PairingDiverges(FriedrichsError):
    """Dual pairing sum failed its tail-bound certificate."""


class Inconclusive(FriedrichsError):
    """Cutoff sweep did not settle into a convergent or divergent pattern."""


class PoorFit(FriedrichsError):
    """Least-squares fit residual exceeded the acceptance threshold."""


class DiagonalizationFailure(FriedrichsError):
    """Dense eigensolver failed to converge on the discretized matrix."""


class ConfigInvalid(FriedrichsError):
    """Configuration file or CLI override is malformed or inconsistent."""


class AliasRisk(UserWarning):
    """Requested times approach the grid Nyquist time; results may alias."""
