"""Acceptance gate: twelve numbered behavior contracts for the package.

One test per criterion, each at its stated tolerance; the -v test line
is the pass/fail record, and every test also prints the measured
numbers behind its verdict.
"""

import cmath
import json
import warnings

import numpy as np
import pytest

from friedrichs import cli, core, hardy, nelson, oracle, semigroup, spectral
from friedrichs.errors import AliasRisk, TimeOutsideSemigroupDomain


def _model(coupling, family="EXP"):
    return core.FriedrichsModel(
        omega0=1.0,
        coupling=coupling,
        form_factor=core.FormFactor(family, 1.0),
    )


def test_01_gamow_exponential_law():
    worst = 0.0
    for gamma in (0.01, 0.1, 1.0):
        pole = core.ComplexPole(e_r=1.0, gamma=gamma, residue=1.0 + 0.0j)
        start = semigroup.GamowFunctional(
            pole, semigroup.DECAYING, 0.7 + 0.2j
        )
        for t in np.linspace(0.0, 50.0 / gamma, 400):
            evolved = semigroup.evolve_gamow(start, t)
            ratio = abs(evolved.amplitude) ** 2 / abs(start.amplitude) ** 2
            law = cmath.exp(-gamma * t).real
            worst = max(worst, abs(ratio - law) / law)
    assert worst <= 1e-12
    print(f"criterion 01 PASS: decay-law max rel dev {worst:.2e} (tol 1e-12)")


def test_02_semigroup_axioms():
    rng = np.random.default_rng(20260816)
    worst = 0.0
    raised = 0
    for _ in range(1000):
        gamma = 10.0 ** rng.uniform(-2.0, 0.0)
        pole = core.ComplexPole(e_r=1.0, gamma=gamma, residue=1.0 + 0.0j)
        kind = semigroup.DECAYING if rng.random() < 0.5 else semigroup.GROWING
        conv = (
            semigroup.BOHM
            if rng.random() < 0.5
            else semigroup.BRUSSELS_AUSTIN
        )
        sign = 1.0 if kind == semigroup.DECAYING else -1.0
        t1, t2 = sign * rng.uniform(0.0, 50.0 / gamma, size=2)
        assert semigroup.evolution_factor(pole, kind, 0.0, conv) == 1.0
        worst = max(
            worst, semigroup.semigroup_residual(conv, kind, t1, t2, pole)
        )
        with pytest.raises(TimeOutsideSemigroupDomain):
            semigroup.semigroup_residual(conv, kind, t1, -t2 - 1e-9, pole)
        raised += 1
    assert worst < 1e-12
    assert raised == 1000
    print(
        f"criterion 02 PASS: identity exact, worst composition residual "
        f"{worst:.2e} (tol 1e-12), {raised}/1000 mixed-sign raised"
    )


def test_03_pole_oracle_agreement(standard_model, standard_pole, oracle_std,
                                  weak_model, weak_pole):
    lines = []
    for model, pole, disc in (
        (standard_model, standard_pole, oracle_std),
        (weak_model, weak_pole, oracle.discretize(weak_model, 2000, 40.0)),
    ):
        gamma = pole.gamma
        t_hi = min(3.0 / gamma, 0.8 * disc.heisenberg_time)
        times = np.linspace(0.0, t_hi, 900)
        fit = oracle.fit_pole_from_survival(
            oracle.survival_amplitude(disc, times), 0.5 / gamma, t_hi
        )
        d_gamma = abs(fit.gamma - gamma) / gamma
        d_er = abs(fit.e_r - pole.e_r) / pole.e_r
        assert d_gamma < 0.01
        assert d_er < 0.001
        lines.append(
            f"lambda={model.coupling}: dGamma {d_gamma:.2e} (tol 1e-2), "
            f"dE_R {d_er:.2e} (tol 1e-3)"
        )
    print("criterion 03 PASS: " + "; ".join(lines))


def test_04_golden_rule_scaling():
    ratios = {}
    for coupling in (0.02, 0.05, 0.1):
        model = _model(coupling)
        pole = core.find_resonance_pole(model)
        ratios[coupling] = pole.gamma / coupling**2
    lowest_order = 2.0 * np.pi * _model(0.1).form_factor.strength(1.0)
    spread = max(ratios.values()) / min(ratios.values()) - 1.0
    assert spread < 0.05
    for coupling, ratio in ratios.items():
        assert abs(ratio - lowest_order) / lowest_order < 0.10
    print(
        f"criterion 04 PASS: Gamma/lambda^2 spread {spread:.2%} (tol 5%), "
        f"max offset from 2*pi*F(omega0) "
        f"{max(abs(r - lowest_order) / lowest_order for r in ratios.values()):.2%}"
        " (tol 10%)"
    )


def test_05_reconstruction(standard_model, standard_pole, standard_phi):
    times = np.linspace(0.0, 5.0 / standard_pole.gamma, 200)
    series = spectral.survival_decomposed(
        standard_model, standard_phi, times, pole=standard_pole
    )
    resid = np.max(
        np.abs(series.pole_part + series.background_part - series.amplitude)
    )
    assert resid < 1e-6
    print(f"criterion 05 PASS: reconstruction residual {resid:.2e} (tol 1e-6)")


def test_06_non_exponential_deviations(strong_series, oracle_std):
    model, pole, series = strong_series
    metrics = spectral.deviation_metrics(series)
    assert metrics.short_time_exponent == pytest.approx(2.0, abs=0.1)
    d_gamma = abs(metrics.gamma_fit - pole.gamma) / pole.gamma
    assert d_gamma < 0.02
    assert metrics.crossover_time is not None
    assert metrics.crossover_time < oracle_std.heisenberg_time
    print(
        f"criterion 06 PASS: p = {metrics.short_time_exponent:.4f} (2 +- 0.1), "
        f"Gamma_fit off by {d_gamma:.2%} (tol 2%), crossover at "
        f"t = {metrics.crossover_time:.1f} < T_H = "
        f"{oracle_std.heisenberg_time:.1f}"
    )


def test_07_weisskopf_wigner_quality(weak_model, weak_pole):
    def window_error(model, pole):
        grid = spectral.resonance_energy_grid(model, pole)
        phi = spectral.discrete_state_wavefunction(model, grid=grid, pole=pole)
        times = np.linspace(0.5 / pole.gamma, 3.0 / pole.gamma, 120)
        exact = spectral.survival_amplitude_exact(phi, times)
        ww = spectral.weisskopf_wigner_amplitude(pole, times)
        return np.max(np.abs(ww - exact) / np.abs(exact))

    weak_err = window_error(weak_model, weak_pole)
    strong_model = _model(0.3)
    strong_err = window_error(
        strong_model, core.find_resonance_pole(strong_model)
    )
    assert weak_err < 0.02
    assert strong_err > 0.05
    print(
        f"criterion 07 PASS: pole-only error {weak_err:.2e} at lambda=0.05 "
        f"(tol 2e-2), degrades to {strong_err:.2%} at lambda=0.3 (> 5%)"
    )


def test_08_breit_wigner_profile(weak_model, weak_pole):
    grid = spectral.resonance_energy_grid(weak_model, weak_pole)
    density = core.spectral_density(weak_model, grid)
    center, fwhm, _ = spectral.fit_lorentzian(grid, density)
    d_center = abs(center - weak_pole.e_r) / weak_pole.e_r
    d_fwhm = abs(fwhm - weak_pole.gamma) / weak_pole.gamma
    assert d_center < 0.005
    assert d_fwhm < 0.02
    print(
        f"criterion 08 PASS: line-shape center off by {d_center:.2e} "
        f"(tol 5e-3), FWHM off by {d_fwhm:.2e} (tol 2e-2)"
    )


def test_09_hardy_classification():
    grid = hardy.line_grid(800.0, 2**17)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AliasRisk)
        upper_pole = hardy.hardy_scores(
            hardy.cauchy_test_function(grid, pole=+1j)
        )
        lower_pole = hardy.hardy_scores(
            hardy.cauchy_test_function(grid, pole=-1j)
        )
        gauss = spectral.gaussian_wavepacket(grid, 0.0, 2.0)
        gauss_scores = hardy.hardy_scores(gauss)
        up, low = hardy.hardy_split(gauss)
    completeness = np.max(np.abs(up.values + low.values - gauss.values))
    assert upper_pole.lower_fraction > 0.99
    assert lower_pole.upper_fraction > 0.99
    assert gauss_scores.upper_fraction == pytest.approx(0.5, abs=0.01)
    assert gauss_scores.lower_fraction == pytest.approx(0.5, abs=0.01)
    assert completeness < 1e-6
    print(
        f"criterion 09 PASS: 1/(E-i) lower {upper_pole.lower_fraction:.5f} "
        f"(> 0.99), 1/(E+i) upper {lower_pole.upper_fraction:.5f} (> 0.99), "
        f"gaussian {gauss_scores.upper_fraction:.4f}/"
        f"{gauss_scores.lower_fraction:.4f} (0.5 +- 0.01), completeness "
        f"{completeness:.2e} (tol 1e-6)"
    )


def test_10_triplet_classification():
    coherent = nelson.coherent_state(1.0, cutoff=40)
    k = np.arange(512, dtype=float)
    labels = (
        nelson.classify_vector(coherent),
        nelson.classify_vector(nelson.DualFunctional(coeffs=1.0 / (k + 1))),
        nelson.classify_vector(nelson.DualFunctional(coeffs=np.ones(512))),
    )
    assert labels == (nelson.PHI, nelson.H_ONLY, nelson.PHI_DUAL_ONLY)
    n0 = nelson.nelson_norm(coherent, 0)
    n1 = nelson.nelson_norm(coherent, 1)
    assert n0 == pytest.approx(1.0, abs=1e-6)
    assert n1 == pytest.approx(2.0, abs=1e-6)
    print(
        f"criterion 10 PASS: classes {labels}, coherent norms "
        f"n0 = {n0:.9f} (1 +- 1e-6), n1 = {n1:.9f} (2 +- 1e-6)"
    )


def test_11_convention_comparison(tmp_path):
    out = tmp_path / "arrow"
    cfg = tmp_path / "arrow.cfg"
    cfg.write_text(f"experiment = ARROW_COMPARE\noutput.dir = {out}\n")
    assert cli.main(["run", str(cfg)]) == 0
    report = json.loads((out / "arrow_report.json").read_text())
    assert report["roles_reversed"] is True
    gammas = report["gamma_decaying_future"]
    gap = abs(gammas["BOHM"] - gammas["BRUSSELS_AUSTIN"])
    assert gap <= 1e-15 * gammas["BOHM"]
    print(
        f"criterion 11 PASS: roles_reversed = true, future decay rates "
        f"differ by {gap:.1e} (machine precision)"
    )


def test_12_determinism(tmp_path):
    configs = {
        "arrow": "experiment = ARROW_COMPARE\noutput.dir = {out}\n",
        "bw": (
            "experiment = BREIT_WIGNER\noutput.dir = {out}\n"
            "model.coupling = 0.05\n"
            "grid.fine_per_width = 60\ngrid.coarse_per_scale = 128\n"
        ),
        "triplet": (
            "experiment = TRIPLET_CLASSIFY\noutput.dir = {out}\n"
            "triplet.source = ones\n"
        ),
    }
    checked = 0
    for name, template in configs.items():
        out = tmp_path / name
        cfg = tmp_path / f"{name}.cfg"
        cfg.write_text(template.format(out=out))
        assert cli.main(["run", str(cfg)]) == 0
        first = {p.name: p.read_bytes() for p in out.iterdir()}
        assert cli.main(["run", str(cfg)]) == 0
        second = {p.name: p.read_bytes() for p in out.iterdir()}
        assert first == second
        checked += len(first)
    print(
        f"criterion 12 PASS: {checked} output files byte-identical across "
        f"reruns of 3 experiments (csv, json, png, manifest)"
    )
