"""Batch front door: experiment configs in, CSV/JSON/figures out.

Config files are flat `key = value` lines with dotted sections and `#`
comments.  Values on the command line (`--set key=value`, repeatable)
override file values; `--print-config` echoes the effective config and
exits.  Every run writes a manifest.json recording the config hash,
library versions, derived quantities, and the produced files, so a
result can always be traced back to the exact inputs.  Outputs are
deterministic: fixed summation orders, fixed float formatting, no
timestamps.

Exit codes: 0 success, 2 config error, 3 numerical failure,
4 semigroup domain violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .core import (
    FormFactor,
    FriedrichsModel,
    find_resonance_pole,
    golden_rule_width,
    spectral_density,
)
from .errors import (
    ConfigInvalid,
    FriedrichsError,
    TimeOutsideSemigroupDomain,
)
from . import hardy as hardy_mod
from . import nelson as nelson_mod
from . import oracle as oracle_mod
from . import plots
from . import semigroup as semigroup_mod
from . import spectral as spectral_mod

EXPERIMENTS = (
    "DECAY_LAW",
    "BREIT_WIGNER",
    "SEMIGROUP_CHECK",
    "ARROW_COMPARE",
    "HARDY_CLASSIFY",
    "TRIPLET_CLASSIFY",
    "ORACLE_VALIDATE",
)


@dataclass(frozen=True)
class _Key:
    name: str
    kind: str  # float, int, bool, str, enum, floatlist, intlist
    default: object  # None means required
    help: str
    choices: tuple = ()
    scope: tuple = ()  # empty = all experiments


_SCHEMA = [
    _Key("experiment", "enum", None, "which experiment to run",
         choices=EXPERIMENTS),
    _Key("output.dir", "str", None, "directory for all output files"),
    _Key("model.omega0", "float", 1.0, "bare level energy (> 0)"),
    _Key("model.coupling", "float", 0.1, "level-continuum coupling (>= 0)"),
    _Key("model.form_factor", "enum", "EXP", "coupling profile family",
         choices=("EXP", "RATIONAL")),
    _Key("model.scale", "float", 1.0, "energy scale of the form factor (> 0)"),
    # decay law
    _Key("times.end", "float", 0.0, "last time; 0 = auto (5/Gamma)",
         scope=("DECAY_LAW",)),
    _Key("times.count", "int", 400, "number of uniformly spaced times",
         scope=("DECAY_LAW",)),
    _Key("times.early_cluster", "bool", True,
         "add a geometric cluster of early times for the short-time fit",
         scope=("DECAY_LAW",)),
    _Key("grid.fine_per_width", "int", 100,
         "energy samples per Gamma inside the resonance window",
         scope=("DECAY_LAW", "BREIT_WIGNER")),
    _Key("grid.coarse_per_scale", "int", 256,
         "energy samples per form-factor scale outside the window",
         scope=("DECAY_LAW", "BREIT_WIGNER")),
    _Key("grid.half_widths", "float", 30.0,
         "resonance window half-width in units of Gamma",
         scope=("DECAY_LAW", "BREIT_WIGNER")),
    # line shape
    _Key("fit.window_hwhm", "float", 4.0,
         "Lorentzian fit window in half-widths", scope=("BREIT_WIGNER",)),
    # semigroup
    _Key("semigroup.convention", "enum", "BOHM", "evolution convention",
         choices=(semigroup_mod.BOHM, semigroup_mod.BRUSSELS_AUSTIN),
         scope=("SEMIGROUP_CHECK",)),
    _Key("semigroup.kind", "enum", semigroup_mod.DECAYING, "which branch",
         choices=(semigroup_mod.DECAYING, semigroup_mod.GROWING),
         scope=("SEMIGROUP_CHECK",)),
    _Key("semigroup.times", "floatlist", (0.0, 1.0, 2.0, 5.0, 10.0, 20.0),
         "comma-separated times (use <= 0 for the growing branch)",
         scope=("SEMIGROUP_CHECK",)),
    # hardy
    _Key("hardy.state", "enum", "cauchy_upper_pole", "candidate profile",
         choices=("cauchy_upper_pole", "cauchy_lower_pole", "gaussian",
                  "discrete"),
         scope=("HARDY_CLASSIFY",)),
    _Key("hardy.half_width", "float", 400.0, "energy grid half-width",
         scope=("HARDY_CLASSIFY",)),
    _Key("hardy.points", "int", 65536, "energy grid size (even)",
         scope=("HARDY_CLASSIFY",)),
    _Key("hardy.profile_points", "int", 401, "time-profile sample count",
         scope=("HARDY_CLASSIFY",)),
    _Key("hardy.profile_span", "float", 0.0,
         "time-profile half-span; 0 = auto", scope=("HARDY_CLASSIFY",)),
    _Key("gaussian.center", "float", 0.0, "gaussian profile center",
         scope=("HARDY_CLASSIFY",)),
    _Key("gaussian.width", "float", 2.0, "gaussian profile width",
         scope=("HARDY_CLASSIFY",)),
    # triplet
    _Key("triplet.source", "enum", "coherent", "coefficient sequence",
         choices=("coherent", "inverse_linear", "ones", "polynomial", "file"),
         scope=("TRIPLET_CLASSIFY",)),
    _Key("triplet.alpha", "float", 1.0, "coherent-state amplitude",
         scope=("TRIPLET_CLASSIFY",)),
    _Key("triplet.cutoff", "int", 40, "coherent-state cutoff",
         scope=("TRIPLET_CLASSIFY",)),
    _Key("triplet.length", "int", 512, "sequence length for explicit sources",
         scope=("TRIPLET_CLASSIFY",)),
    _Key("triplet.order", "float", 3.0, "polynomial growth order",
         scope=("TRIPLET_CLASSIFY",)),
    _Key("triplet.file", "str", "", "JSON file with [re, im] coefficient pairs",
         scope=("TRIPLET_CLASSIFY",)),
    _Key("triplet.n_max", "int", 3, "largest norm order tested",
         scope=("TRIPLET_CLASSIFY",)),
    _Key("triplet.k_sweep", "intlist", (16, 32, 64, 128, 256, 512),
         "increasing cutoffs for the stabilization sweep",
         scope=("TRIPLET_CLASSIFY",)),
    # oracle
    _Key("oracle.n_levels", "int", 2000, "continuum discretization size",
         scope=("ORACLE_VALIDATE",)),
    _Key("oracle.omega_max", "float", 0.0, "cutoff; 0 = model default",
         scope=("ORACLE_VALIDATE",)),
    _Key("oracle.compare_points", "int", 200, "survival comparison times",
         scope=("ORACLE_VALIDATE",)),
]

_BY_NAME = {k.name: k for k in _SCHEMA}


# ---------------------------------------------------------------------------
# config parsing and validation


def parse_config_text(text, source="<config>"):
    """Flat `key = value` lines into a string dict; strict about shape."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigInvalid(f"{source}:{lineno}: expected 'key = value'")
        key, value = body.split("=", 1)
        key, value = key.strip(), value.strip()
        if not key or not value:
            raise ConfigInvalid(f"{source}:{lineno}: empty key or value")
        if key in raw:
            raise ConfigInvalid(f"{source}:{lineno}: duplicate key {key!r}")
        raw[key] = value
    return raw


def _convert(key, text):
    kind = key.kind
    try:
        if kind == "float":
            value = float(text)
            if not math.isfinite(value):
                raise ValueError("not finite")
            return value
        if kind == "int":
            return int(text)
        if kind == "bool":
            low = text.lower()
            if low not in ("true", "false"):
                raise ValueError("expected true or false")
            return low == "true"
        if kind == "floatlist":
            return tuple(float(p) for p in text.split(","))
        if kind == "intlist":
            return tuple(int(p) for p in text.split(","))
        if kind == "enum":
            if text not in key.choices:
                raise ValueError(f"must be one of {', '.join(key.choices)}")
            return text
        return text
    except ValueError as exc:
        raise ConfigInvalid(f"{key.name}: {exc}") from None


def validate_config(raw):
    """Raw string dict -> typed effective config for one experiment."""
    if "experiment" not in raw:
        raise ConfigInvalid("missing required key 'experiment'")
    experiment = _convert(_BY_NAME["experiment"], raw["experiment"])
    allowed = {
        k.name for k in _SCHEMA if not k.scope or experiment in k.scope
    }
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise ConfigInvalid(
            f"keys not used by {experiment}: {', '.join(unknown)}"
        )
    cfg = {}
    for key in _SCHEMA:
        if key.scope and experiment not in key.scope:
            continue
        if key.name in raw:
            cfg[key.name] = _convert(key, raw[key.name])
        elif key.default is None:
            raise ConfigInvalid(f"missing required key {key.name!r}")
        else:
            cfg[key.name] = key.default
    if cfg["model.omega0"] <= 0:
        raise ConfigInvalid("model.omega0 must be > 0")
    if cfg["model.coupling"] < 0:
        raise ConfigInvalid("model.coupling must be >= 0")
    if cfg["model.scale"] <= 0:
        raise ConfigInvalid("model.scale must be > 0")
    return cfg


def _canonical_text(cfg):
    lines = []
    for name in sorted(cfg):
        value = cfg[name]
        if isinstance(value, tuple):
            value = ",".join(repr(v) if isinstance(v, float) else str(v)
                             for v in value)
        elif isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, float):
            value = repr(value)
        lines.append(f"{name} = {value}")
    return "\n".join(lines) + "\n"


def print_schema(stream=None):
    stream = sys.stdout if stream is None else stream
    stream.write("configuration keys (key: type [default] description)\n")
    for key in _SCHEMA:
        default = "required" if key.default is None else repr(key.default)
        scope = "" if not key.scope else f"  (only: {', '.join(key.scope)})"
        choice = "" if not key.choices else f" one of {', '.join(map(str, key.choices))};"
        stream.write(
            f"  {key.name}: {key.kind} [{default}]{choice} {key.help}{scope}\n"
        )


# ---------------------------------------------------------------------------
# output helpers


def _fmt(x):
    return format(float(x), ".17g")


def _write_csv(path, header, columns):
    rows = len(columns[0])
    with open(path, "w", encoding="utf-8") as f:
        f.write(header + "\n")
        for i in range(rows):
            f.write(",".join(_fmt(col[i]) for col in columns) + "\n")
    return os.path.basename(path)


def _write_json(path, payload):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")
    return os.path.basename(path)


def _jsonable(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _model_from(cfg):
    ff = FormFactor(cfg["model.form_factor"], cfg["model.scale"])
    return FriedrichsModel(
        omega0=cfg["model.omega0"],
        coupling=cfg["model.coupling"],
        form_factor=ff,
    )


# ---------------------------------------------------------------------------
# experiments


def _run_decay_law(cfg, outdir):
    model = _model_from(cfg)
    pole = find_resonance_pole(model)
    grid = spectral_mod.resonance_energy_grid(
        model,
        pole,
        fine_per_width=cfg["grid.fine_per_width"],
        coarse_per_scale=cfg["grid.coarse_per_scale"],
        half_widths=cfg["grid.half_widths"],
    )
    phi = spectral_mod.discrete_state_wavefunction(model, grid=grid, pole=pole)
    t_end = cfg["times.end"] if cfg["times.end"] > 0 else 5.0 / pole.gamma
    times = np.linspace(0.0, t_end, cfg["times.count"])
    if cfg["times.early_cluster"]:
        early = np.geomspace(1e-3 / pole.gamma, 0.0099 / pole.gamma, 10)
        times = np.unique(np.concatenate([times, early[early < t_end]]))
    series = spectral_mod.survival_decomposed(model, phi, times, pole=pole)
    metrics = spectral_mod.deviation_metrics(series)
    outputs = [
        _write_csv(
            os.path.join(outdir, "survival.csv"),
            "t,re_A,im_A,re_pole,im_pole,re_bg,im_bg",
            [
                series.times,
                series.amplitude.real,
                series.amplitude.imag,
                series.pole_part.real,
                series.pole_part.imag,
                series.background_part.real,
                series.background_part.imag,
            ],
        ),
        _write_json(os.path.join(outdir, "deviation.json"), metrics.to_dict()),
    ]
    fig = plots.decay_figure(os.path.join(outdir, "decay_law.png"), series)
    outputs.append(os.path.basename(fig))
    coef = series.decomposition.coefficient
    derived = {
        "e_r": pole.e_r,
        "gamma": pole.gamma,
        "golden_rule_width": golden_rule_width(model),
        "gamow_coefficient": coef,
        "gamow_coefficient_abs": abs(coef),
        "metrics": metrics.to_dict(),
        "grid_points": int(grid.size),
    }
    return derived, outputs


def _run_breit_wigner(cfg, outdir):
    model = _model_from(cfg)
    pole = find_resonance_pole(model)
    grid = spectral_mod.resonance_energy_grid(
        model,
        pole,
        fine_per_width=cfg["grid.fine_per_width"],
        coarse_per_scale=cfg["grid.coarse_per_scale"],
        half_widths=cfg["grid.half_widths"],
    )
    density = spectral_density(model, grid)
    center, fwhm, height = spectral_mod.fit_lorentzian(
        grid, density, window_hwhm=cfg["fit.window_hwhm"]
    )
    fit_vals = height * (fwhm / 2.0) ** 2 / ((grid - center) ** 2 + (fwhm / 2.0) ** 2)
    fit_report = {
        "center": center,
        "fwhm": fwhm,
        "height": height,
        "center_rel_pole": abs(center - pole.e_r) / pole.e_r,
        "fwhm_rel_pole": abs(fwhm - pole.gamma) / pole.gamma,
    }
    outputs = [
        _write_csv(
            os.path.join(outdir, "line_shape.csv"),
            "energy,density,lorentzian_fit",
            [grid, density, fit_vals],
        ),
        _write_json(os.path.join(outdir, "line_shape_fit.json"), fit_report),
    ]
    fig = plots.line_shape_figure(
        os.path.join(outdir, "line_shape.png"), grid, density, fit_vals,
        center, fwhm,
    )
    outputs.append(os.path.basename(fig))
    derived = {"e_r": pole.e_r, "gamma": pole.gamma, **fit_report}
    return derived, outputs


def _run_semigroup_check(cfg, outdir):
    model = _model_from(cfg)
    pole = find_resonance_pole(model)
    convention = cfg["semigroup.convention"]
    kind = cfg["semigroup.kind"]
    times = np.asarray(cfg["semigroup.times"], dtype=float)
    factors = np.array(
        [
            semigroup_mod.evolution_factor(pole, kind, t, convention)
            for t in times
        ]
    )
    residual_max = 0.0
    for t1 in times[: min(times.size, 8)]:
        for t2 in times[: min(times.size, 8)]:
            residual_max = max(
                residual_max,
                semigroup_mod.semigroup_residual(convention, kind, t1, t2, pole),
            )
    identity_gap = abs(
        semigroup_mod.evolution_factor(pole, kind, 0.0, convention) - 1.0
    )
    outputs = [
        _write_csv(
            os.path.join(outdir, "semigroup.csv"),
            "t,re_factor,im_factor,modulus",
            [times, factors.real, factors.imag, np.abs(factors)],
        ),
        _write_json(
            os.path.join(outdir, "semigroup.json"),
            {
                "convention": convention,
                "kind": kind,
                "e_r": pole.e_r,
                "gamma": pole.gamma,
                "identity_gap": identity_gap,
                "composition_residual_max": residual_max,
            },
        ),
    ]
    order = np.argsort(times)
    fig = plots.semigroup_figure(
        os.path.join(outdir, "semigroup.png"),
        times[order], np.abs(factors)[order], kind,
    )
    outputs.append(os.path.basename(fig))
    derived = {
        "e_r": pole.e_r,
        "gamma": pole.gamma,
        "identity_gap": identity_gap,
        "composition_residual_max": residual_max,
    }
    return derived, outputs


def _run_arrow_compare(cfg, outdir):
    model = _model_from(cfg)
    pole = find_resonance_pole(model)
    report = semigroup_mod.convention_report(model, pole=pole)
    outputs = [_write_json(os.path.join(outdir, "arrow_report.json"), report)]
    gammas = report["gamma_decaying_future"]
    derived = {
        "e_r": pole.e_r,
        "gamma": pole.gamma,
        "roles_reversed": report["roles_reversed"],
        "gamma_gap": abs(
            gammas[semigroup_mod.BOHM] - gammas[semigroup_mod.BRUSSELS_AUSTIN]
        ),
    }
    return derived, outputs


def _hardy_state(cfg):
    grid = hardy_mod.line_grid(cfg["hardy.half_width"], cfg["hardy.points"])
    name = cfg["hardy.state"]
    if name == "cauchy_upper_pole":
        return hardy_mod.cauchy_test_function(grid, pole=+1j), 8.0
    if name == "cauchy_lower_pole":
        return hardy_mod.cauchy_test_function(grid, pole=-1j), 8.0
    if name == "gaussian":
        width = cfg["gaussian.width"]
        phi = spectral_mod.gaussian_wavepacket(
            grid, cfg["gaussian.center"], width
        )
        return phi, 4.0 / width
    model = _model_from(cfg)
    pole = find_resonance_pole(model)
    h = model.omega_max / cfg["hardy.points"]
    grid = h * np.arange(cfg["hardy.points"])
    phi = spectral_mod.discrete_state_wavefunction(model, grid=grid, pole=pole)
    return phi, 3.0 / pole.gamma


def _run_hardy_classify(cfg, outdir):
    phi, auto_span = _hardy_state(cfg)
    scores = hardy_mod.hardy_scores(phi)
    span = cfg["hardy.profile_span"] or auto_span
    t_grid = np.linspace(-span, span, cfg["hardy.profile_points"])
    profile = hardy_mod.time_profile(phi, t_grid)
    outputs = [
        _write_json(
            os.path.join(outdir, "hardy_scores.json"), scores.to_dict()
        ),
        _write_csv(
            os.path.join(outdir, "time_profile.csv"),
            "t,re_G,im_G,abs_G",
            [profile.times, profile.values.real, profile.values.imag,
             np.abs(profile.values)],
        ),
    ]
    fig = plots.hardy_figure(os.path.join(outdir, "hardy_profile.png"), profile)
    outputs.append(os.path.basename(fig))
    derived = {"state": cfg["hardy.state"], **scores.to_dict()}
    return derived, outputs


def _triplet_candidate(cfg):
    source = cfg["triplet.source"]
    if source == "coherent":
        return nelson_mod.coherent_state(
            cfg["triplet.alpha"], cutoff=cfg["triplet.cutoff"]
        )
    if source == "inverse_linear":
        k = np.arange(cfg["triplet.length"], dtype=float)
        return nelson_mod.DualFunctional(coeffs=1.0 / (k + 1.0))
    if source == "ones":
        return nelson_mod.DualFunctional(
            coeffs=np.ones(cfg["triplet.length"])
        )
    if source == "polynomial":
        return nelson_mod.DualFunctional.polynomial(cfg["triplet.order"])
    path = cfg["triplet.file"]
    if not path:
        raise ConfigInvalid("triplet.file required when triplet.source = file")
    try:
        with open(path, "r", encoding="utf-8") as f:
            pairs = json.load(f)
        coeffs = np.array([complex(re, im) for re, im in pairs])
    except (OSError, ValueError, TypeError) as exc:
        raise ConfigInvalid(f"triplet.file: {exc}") from None
    return nelson_mod.DualFunctional(coeffs=coeffs)


def _run_triplet_classify(cfg, outdir):
    candidate = _triplet_candidate(cfg)
    label = nelson_mod.classify_vector(
        candidate, n_max=cfg["triplet.n_max"], k_sweep=cfg["triplet.k_sweep"]
    )
    norms = None
    if isinstance(candidate, nelson_mod.HermiteState):
        norms = [
            nelson_mod.nelson_norm(candidate, n)
            for n in range(cfg["triplet.n_max"] + 1)
        ]
    payload = {
        "source": cfg["triplet.source"],
        "classification": label,
        "norms": norms,
    }
    outputs = [_write_json(os.path.join(outdir, "triplet.json"), payload)]
    return dict(payload), outputs


def _run_oracle_validate(cfg, outdir):
    model = _model_from(cfg)
    pole = find_resonance_pole(model)
    omega_max = cfg["oracle.omega_max"] or None
    disc = oracle_mod.discretize(model, cfg["oracle.n_levels"], omega_max)
    t_hi = min(5.0 / pole.gamma, 0.8 * disc.heisenberg_time)
    times = np.linspace(0.0, t_hi, cfg["oracle.compare_points"])
    reference = oracle_mod.survival_amplitude(disc, times)
    fit = oracle_mod.fit_pole_from_survival(reference, 0.5 / pole.gamma, t_hi)
    grid = spectral_mod.resonance_energy_grid(model, pole)
    phi = spectral_mod.discrete_state_wavefunction(model, grid=grid, pole=pole)
    exact = spectral_mod.survival_amplitude_exact(phi, times)
    diff = np.abs(np.abs(exact) - np.abs(reference.values))
    report = {
        "newton": {"e_r": pole.e_r, "gamma": pole.gamma},
        "oracle_fit": {"e_r": fit.e_r, "gamma": fit.gamma},
        "e_r_rel_diff": abs(fit.e_r - pole.e_r) / pole.e_r,
        "gamma_rel_diff": abs(fit.gamma - pole.gamma) / pole.gamma,
        "max_survival_diff": float(diff.max()),
        "heisenberg_time": disc.heisenberg_time,
        "n_levels": cfg["oracle.n_levels"],
    }
    outputs = [
        _write_csv(
            os.path.join(outdir, "oracle_compare.csv"),
            "t,abs_exact,abs_oracle,abs_diff",
            [times, np.abs(exact), np.abs(reference.values), diff],
        ),
        _write_json(os.path.join(outdir, "oracle_validate.json"), report),
    ]
    fig = plots.oracle_figure(
        os.path.join(outdir, "oracle_compare.png"),
        times, np.abs(exact), np.abs(reference.values),
    )
    outputs.append(os.path.basename(fig))
    return dict(report), outputs


_RUNNERS = {
    "DECAY_LAW": _run_decay_law,
    "BREIT_WIGNER": _run_breit_wigner,
    "SEMIGROUP_CHECK": _run_semigroup_check,
    "ARROW_COMPARE": _run_arrow_compare,
    "HARDY_CLASSIFY": _run_hardy_classify,
    "TRIPLET_CLASSIFY": _run_triplet_classify,
    "ORACLE_VALIDATE": _run_oracle_validate,
}


def run_experiment(cfg):
    """Execute one validated config; returns the manifest dict."""
    outdir = cfg["output.dir"]
    os.makedirs(outdir, exist_ok=True)
    derived, outputs = _RUNNERS[cfg["experiment"]](cfg, outdir)
    manifest = {
        "experiment": cfg["experiment"],
        "config_sha256": hashlib.sha256(
            _canonical_text(cfg).encode()
        ).hexdigest(),
        "package_version": __version__,
        "library_versions": {
            "numpy": np.__version__,
            "scipy": __import__("scipy").__version__,
            "matplotlib": __import__("matplotlib").__version__,
        },
        "derived": _jsonable(derived),
        "outputs": sorted(outputs + ["manifest.json"]),
    }
    _write_json(os.path.join(outdir, "manifest.json"), manifest)
    return manifest


# ---------------------------------------------------------------------------
# entry point


def _load_effective_config(args):
    with open(args.config, "r", encoding="utf-8") as f:
        raw = parse_config_text(f.read(), source=args.config)
    for item in args.set or []:
        if "=" not in item:
            raise ConfigInvalid(f"--set needs key=value, got {item!r}")
        key, value = item.split("=", 1)
        raw[key.strip()] = value.strip()
    return validate_config(raw)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="friedrichs",
        description="resonance/decay experiments on the solvable level-continuum model",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("run", "run an experiment config"),
        ("validate", "check a config without running it"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config", help="path to the config file")
        p.add_argument(
            "--set", action="append", metavar="KEY=VALUE",
            help="override a config value (repeatable)",
        )
        p.add_argument(
            "--print-config", action="store_true",
            help="echo the effective config and exit",
        )
    sub.add_parser("print-schema", help="list every config key")
    args = parser.parse_args(argv)

    if args.command == "print-schema":
        print_schema()
        return 0
    try:
        cfg = _load_effective_config(args)
        if args.print_config:
            sys.stdout.write(_canonical_text(cfg))
            return 0
        if args.command == "validate":
            print(f"config valid: {cfg['experiment']}")
            return 0
        manifest = run_experiment(cfg)
        print(f"{cfg['experiment']}: wrote {len(manifest['outputs'])} files "
              f"to {cfg['output.dir']}")
        return 0
    except (ConfigInvalid, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except TimeOutsideSemigroupDomain as exc:
        print(f"error: semigroup domain violation: {exc}", file=sys.stderr)
        return 4
    except FriedrichsError as exc:
        print(f"numerical error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
