"""Resonance poles, Gamow vectors and decay laws for the Friedrichs model.

A discrete level omega0 > 0 coupled with strength lambda to the
continuum [0, inf) has no point spectrum for lambda != 0; the level
survives only as a pole of the analytically continued resolvent on the
second Riemann sheet, at z_R = E_R - i*Gamma/2.  Everything in this
package hangs off that pole:

  core      pole location, sheet-aware denominator, spectral density
  spectral  survival amplitude A(t), pole/background decomposition,
            deviation metrics for the non-exponential regimes
  semigroup Gamow evolution factors, one per convention and branch,
            each defined on a half-line of times only
  hardy     upper/lower frequency-split of energy profiles and the
            state-like vs observable-like classification
  nelson    oscillator-basis norm towers and the triplet placement
            of coefficient sequences
  oracle    brute-force discretized diagonalization used to validate
            the continuum results
  cli       batch experiments with manifest-tracked outputs

Units: hbar = 1 throughout; energies and inverse times share a scale.
"""

__version__ = "0.1.0"

from .core import (
    FIRST,
    SECOND,
    ComplexPole,
    FormFactor,
    FriedrichsModel,
    bound_state_energy,
    find_resonance_pole,
    golden_rule_width,
    resolvent_denominator,
    resolvent_denominator_boundary,
    spectral_density,
)
from .errors import (
    AliasRisk,
    BranchCutEvaluation,
    ConfigInvalid,
    ContinuationFailure,
    DiagonalizationFailure,
    FriedrichsError,
    Inconclusive,
    InsufficientSampling,
    InvalidGrid,
    MultiplePoles,
    NegativeTime,
    NoPoleFound,
    NotNormalized,
    PairingDiverges,
    PoorFit,
    QuadratureFailure,
    TimeOutsideSemigroupDomain,
)
from .spectral import (
    DeviationMetrics,
    EnergyWavefunction,
    GamowDecomposition,
    SurvivalSeries,
    background_amplitude,
    decompose_survival,
    deviation_metrics,
    discrete_state_wavefunction,
    fit_lorentzian,
    gamow_coefficient,
    gaussian_wavepacket,
    pole_part_amplitude,
    resonance_energy_grid,
    survival_amplitude_exact,
    survival_decomposed,
    weisskopf_wigner_amplitude,
)
from .semigroup import (
    BOHM,
    BRUSSELS_AUSTIN,
    DECAYING,
    GROWING,
    GamowFunctional,
    convention_report,
    evolution_factor,
    evolve_gamow,
    semigroup_residual,
)
from .hardy import (
    HardyScores,
    TimeProfile,
    cauchy_test_function,
    hardy_scores,
    hardy_split,
    line_grid,
    time_profile,
)
from .nelson import (
    H_ONLY,
    PHI,
    PHI_DUAL_ONLY,
    DualFunctional,
    HermiteState,
    classify_vector,
    coherent_state,
    dual_pairing,
    nelson_inner,
    nelson_norm,
    raise_state,
)
from .oracle import (
    DiscretizedModel,
    OracleSurvival,
    discretize,
    fit_pole_from_survival,
    survival_amplitude,
)
