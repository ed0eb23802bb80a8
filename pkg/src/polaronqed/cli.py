"""Experiment orchestration and command-line entry point.

Each run takes a JSON config (documented in the README), composes the
library modules, and writes full-precision CSV data plus a JSON manifest.
Identical configs reproduce byte-identical CSV files regardless of worker
count; manifests additionally carry wall time and library version.

Subcommands: deltar, dynamics, onset, spectrum, bathcheck, chainmap, sweep.
Exit codes: 0 success, 2 config error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import copy
import json
import os
import shutil
import sys
import time

import numpy as np

from . import __version__
from .bath import (BathError, DiscreteBath, diagonalize_cavity_bath,
                   discretize_cavity_bath, discretize_ohmic, merge_baths,
                   ohmic_sum_rule, reconstruct_cavity_j,
                   residue_identity_check)
from .chain import ChainError, chain_spectral_check, lanczos_chain_map
from .dynamics import (PropagationError, TimeSeries, analytic_amplitude,
                       evolve_amplitudes, max_dpe_dt, pe_lab_estimate,
                       rabi_onset_g)
from .params import ModelParams
from .polaron import (NonConvergedError, adiabatic_rg_delta_r, build_h_p1,
                      equilibrium_observables, solve_delta_r_continuum,
                      solve_delta_r_discrete)
from .spectral import SpectralDensity, combined_j, ohmic_j
from .spectrum import METHODS, SpectrumError, s_omega

EXPERIMENTS = ("delta_r_sweep", "dynamics", "onset_scan", "spectrum",
               "bath_check", "chain_map")

_SUBCOMMANDS = {
    "deltar": "delta_r_sweep",
    "dynamics": "dynamics",
    "onset": "onset_scan",
    "spectrum": "spectrum",
    "bathcheck": "bath_check",
    "chainmap": "chain_map",
}

_NUMERIC_ERRORS = (NonConvergedError, PropagationError, SpectrumError,
                   BathError, ChainError, FloatingPointError)


class ConfigError(ValueError):
    """Invalid run configuration; names the offending field."""

    def __init__(self, field: str, reason: str):
        super().__init__(f"config field '{field}': {reason}")
        self.field = field
        self.reason = reason


# ---------------------------------------------------------------------------
# config handling

def _require(cfg: dict, field: str, typ, positive=False):
    cur = cfg
    for part in field.split("."):
        if not isinstance(cur, dict) or part not in cur:
            raise ConfigError(field, "missing required field")
        cur = cur[part]
    if typ is float and isinstance(cur, int):
        cur = float(cur)
    if not isinstance(cur, typ):
        raise ConfigError(field, f"expected {typ.__name__}, got {type(cur).__name__}")
    if positive and not cur > 0:
        raise ConfigError(field, f"must be positive, got {cur}")
    return cur


def parse_model(cfg: dict) -> ModelParams:
    m = cfg.get("model")
    if not isinstance(m, dict):
        raise ConfigError("model", "missing model section")
    try:
        return ModelParams(
            delta=float(_require(cfg, "model.delta", (int, float), positive=True)),
            omega=float(_require(cfg, "model.omega", (int, float), positive=True)),
            g=float(m.get("g", 0.0)),
            alpha=float(m.get("alpha", 0.0)),
            alpha_cav=float(m.get("alpha_cav", 0.0)),
            omega_c=float(m.get("omega_c", 0.0)),
        )
    except ValueError as exc:
        raise ConfigError("model", str(exc)) from exc


def validate_config(cfg: dict) -> dict:
    """Validate and normalize a run config before any compute."""
    if not isinstance(cfg, dict):
        raise ConfigError("<root>", "config must be a JSON object")
    exp = cfg.get("experiment")
    if exp not in EXPERIMENTS:
        raise ConfigError("experiment", f"must be one of {EXPERIMENTS}, got {exp!r}")
    parse_model(cfg)
    num = cfg.setdefault("numeric", {})
    if not isinstance(num, dict):
        raise ConfigError("numeric", "must be an object")
    n_modes = num.setdefault("n_modes", 256)
    if not isinstance(n_modes, int) or n_modes < 1:
        raise ConfigError("numeric.n_modes", f"must be a positive integer, got {n_modes}")
    for key, default in (("t_max", 100.0), ("dt", 0.05)):
        val = num.setdefault(key, default)
        if not isinstance(val, (int, float)) or not val > 0:
            raise ConfigError(f"numeric.{key}", f"must be positive, got {val}")
    if exp == "delta_r_sweep":
        sweep = cfg.setdefault("sweep", {})
        par = sweep.setdefault("parameter", "alpha")
        if par not in ("alpha", "g", "alpha_cav"):
            raise ConfigError("sweep.parameter", f"must be alpha, g or alpha_cav, got {par!r}")
        values = sweep.get("values")
        if (not isinstance(values, list) or not values
                or not all(isinstance(v, (int, float)) and v >= 0 for v in values)):
            raise ConfigError("sweep.values", "must be a non-empty list of numbers >= 0")
    if exp == "dynamics":
        gv = cfg.setdefault("g_values", [cfg["model"].get("g", 0.0)])
        if not isinstance(gv, list) or not all(isinstance(v, (int, float)) for v in gv):
            raise ConfigError("g_values", "must be a list of numbers")
    if exp == "onset_scan":
        onset = cfg.setdefault("onset", {})
        for key, default in (("g_min", 0.0), ("g_max", 0.15), ("g_step", 0.005)):
            val = onset.setdefault(key, default)
            if not isinstance(val, (int, float)):
                raise ConfigError(f"onset.{key}", "must be a number")
        if not onset["g_step"] > 0 or onset["g_max"] <= onset["g_min"]:
            raise ConfigError("onset.g_step", "need g_step > 0 and g_max > g_min")
        alphas = onset.setdefault("alphas", [cfg["model"].get("alpha", 0.1)])
        if not isinstance(alphas, list) or not alphas:
            raise ConfigError("onset.alphas", "must be a non-empty list")
        onset.setdefault("eps", 5e-4)
        onset.setdefault("auto_retune", True)
    if exp == "spectrum":
        spec = cfg.setdefault("spectrum", {})
        grid = spec.setdefault("omega_grid", {"min": 0.1, "max": 1.5, "n": 800})
        for key in ("min", "max", "n"):
            if key not in grid:
                raise ConfigError(f"spectrum.omega_grid.{key}", "missing required field")
        if not grid["max"] > grid["min"] > 0:
            raise ConfigError("spectrum.omega_grid.min", "need 0 < min < max")
        if not isinstance(grid["n"], int) or grid["n"] < 2:
            raise ConfigError("spectrum.omega_grid.n", "must be an integer >= 2")
        methods = spec.setdefault("methods", ["exact", "markov"])
        for m in methods:
            if m not in METHODS:
                raise ConfigError("spectrum.methods", f"unknown method {m!r}")
        spec.setdefault("gamma_squared", False)
    return cfg


# ---------------------------------------------------------------------------
# shared pipeline pieces

def build_combined_bath(p: ModelParams, n_modes: int) -> DiscreteBath:
    """Qubit bath plus reduced cavity branch, merged into one spin-boson bath."""
    spin = discretize_ohmic(p.alpha, p.delta, p.omega_c, n_modes)
    cav = discretize_cavity_bath(p.alpha_cav, p.omega, p.omega_c, n_modes)
    dec = diagonalize_cavity_bath(p.omega, p.g, cav)
    return merge_baths(spin, dec)


def solve_frame(p: ModelParams, n_modes: int):
    bath = build_combined_bath(p, n_modes)
    frame = solve_delta_r_discrete(bath, p.delta)
    return bath, frame


def _fmt(x) -> str:
    return format(float(x), ".17g")


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) if isinstance(x, (int, float, np.floating))
                              else str(x) for x in row) + "\n")


def _write_manifest(path, payload: dict):
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=float)
        fh.write("\n")
    os.replace(tmp, path)


# ---------------------------------------------------------------------------
# experiments

def _run_delta_r_sweep(cfg, outdir):
    p = parse_model(cfg)
    n = cfg["numeric"]["n_modes"]
    par = cfg["sweep"]["parameter"]
    values = sorted(float(v) for v in cfg["sweep"]["values"])
    rows = []
    localized_any = False
    for v in values:
        pv = p.with_(**{par: v})
        bath, frame = solve_frame(pv, n)
        arg = adiabatic_rg_delta_r(SpectralDensity("combined", pv), pv.delta, pv.omega_c)
        rows.append((v, frame.delta_r, arg))
        localized_any = localized_any or frame.localized
    path = os.path.join(outdir, "delta_r_sweep.csv")
    write_csv(path, [par, "delta_r_polaron", "delta_r_arg"], rows)
    return {"data_files": ["delta_r_sweep.csv"],
            "derived": {"localized_any": localized_any,
                        "delta_r_first": rows[0][1], "delta_r_last": rows[-1][1]}}


def _run_dynamics(cfg, outdir):
    p = parse_model(cfg)
    num = cfg["numeric"]
    n, t_max, dt = num["n_modes"], float(num["t_max"]), float(num["dt"])
    t = np.arange(0.0, t_max + 0.5 * dt, dt)
    files, derived = [], {}
    for g in cfg["g_values"]:
        pg = p.with_(g=float(g))
        bath, frame = solve_frame(pg, n)
        h = build_h_p1(bath, frame)
        amps = evolve_amplitudes(h, t)
        pe_pol = np.abs(amps[:, 0]) ** 2
        _, pe_eq = equilibrium_observables(frame, pg.delta)
        gamma_r = ohmic_j(frame.delta_r, pg)
        psi = analytic_amplitude(pg.g, gamma_r, pg.kappa,
                                 frame.delta_r - pg.omega, t)
        pe_app = pe_lab_estimate(np.abs(psi) ** 2, pe_eq)
        name = f"dynamics_g{float(g)!r}.csv"
        write_csv(os.path.join(outdir, name), ["t", "pe_polaron", "pe_app"],
                  zip(t, pe_pol, pe_app))
        files.append(name)
        derived[f"g={float(g)!r}"] = {
            "delta_r": frame.delta_r, "pe_eq": pe_eq, "gamma_r": gamma_r,
            "converged": frame.converged, "localized": frame.localized,
            "max_dpe_dt": max_dpe_dt(TimeSeries(t, pe_lab_estimate(pe_pol, pe_eq))),
        }
    return {"data_files": files, "derived": derived}


def resonant_cavity_frequency(p: ModelParams, g_probe: float = 0.05,
                              iterations: int = 8) -> float:
    """Cavity frequency tuned onto the renormalized qubit line."""
    omega = 0.9 * p.delta
    for _ in range(iterations):
        pv = p.with_(omega=max(omega, 0.02 * p.delta), g=g_probe)
        omega = solve_delta_r_continuum(SpectralDensity("combined", pv),
                                        p.delta, p.omega_c)
    return omega


def detect_onset(gs: np.ndarray, mds: np.ndarray, eps: float) -> float:
    """First coupling whose oscillation signal exceeds eps (interpolated)."""
    above = np.nonzero(np.asarray(mds) > eps)[0]
    if above.size == 0:
        return float("nan")
    i = int(above[0])
    if i == 0:
        return float(gs[0])
    x0, x1 = gs[i - 1], gs[i]
    y0, y1 = mds[i - 1], mds[i]
    return float(x0 + (eps - y0) * (x1 - x0) / (y1 - y0))


def _run_onset_scan(cfg, outdir, jobs=1):
    p = parse_model(cfg)
    num = cfg["numeric"]
    onset = cfg["onset"]
    n = num["n_modes"]
    gs = np.arange(onset["g_min"], onset["g_max"] + 0.5 * onset["g_step"],
                   onset["g_step"])
    eps = float(onset["eps"])
    t_recur = 2.0 * (2 * n + 1) / p.omega_c
    rows = []
    derived = {}
    for alpha in onset["alphas"]:
        pa = p.with_(alpha=float(alpha))
        if onset.get("auto_retune", True):
            omega_a = resonant_cavity_frequency(pa)
        else:
            omega_a = pa.omega
        pa = pa.with_(omega=omega_a)
        dr0 = solve_delta_r_continuum(
            SpectralDensity("combined", pa.with_(g=0.0)), pa.delta, pa.omega_c)
        gamma_r = combined_j(dr0, pa.with_(g=0.0))
        gpred = rabi_onset_g(gamma_r, pa.kappa)
        tasks = [(cfg, float(g), alpha, omega_a, t_recur) for g in gs]
        if jobs > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
                mds = list(pool.map(_onset_point, tasks))
        else:
            mds = [_onset_point(task) for task in tasks]
        for g, md in zip(gs, mds):
            rows.append((alpha, g, md, gpred))
        derived[f"alpha={float(alpha)!r}"] = {
            "omega": omega_a, "gamma_r": gamma_r, "kappa": pa.kappa,
            "g_threshold_prediction": gpred,
            "g_onset_measured": detect_onset(gs, np.array(mds), eps),
        }
    path = os.path.join(outdir, "onset_scan.csv")
    write_csv(path, ["alpha", "g", "max_dpe_dt", "g_threshold_prediction"], rows)
    return {"data_files": ["onset_scan.csv"], "derived": derived}


def _onset_point(task):
    cfg, g, alpha, omega_a, t_recur = task
    p = parse_model(cfg).with_(g=g, alpha=float(alpha), omega=omega_a)
    num = cfg["numeric"]
    bath, frame = solve_frame(p, num["n_modes"])
    h = build_h_p1(bath, frame)
    t_max = min(50.0 / max(frame.delta_r, 0.05 * p.delta), 0.75 * t_recur)
    t = np.arange(0.0, t_max, float(num["dt"]))
    pe = np.abs(evolve_amplitudes(h, t)[:, 0]) ** 2
    _, pe_eq = equilibrium_observables(frame, p.delta)
    series = TimeSeries(t, pe_lab_estimate(pe, pe_eq))
    return max_dpe_dt(series)


def _run_spectrum(cfg, outdir):
    p = parse_model(cfg)
    spec = cfg["spectrum"]
    grid = spec["omega_grid"]
    omegas = np.linspace(float(grid["min"]), float(grid["max"]), int(grid["n"]))
    n = cfg["numeric"]["n_modes"]
    bath, frame = solve_frame(p, n)
    delta_r = float(spec.get("delta_r", frame.delta_r))
    files, derived = [], {"delta_r": delta_r, "delta_r_solved": frame.delta_r}
    for method in spec["methods"]:
        res = s_omega(omegas, method, p, delta_r, bath=bath, frame=frame,
                      gamma_squared=bool(spec["gamma_squared"]))
        name = f"spectrum_{method}.csv"
        write_csv(os.path.join(outdir, name), ["omega", "S", "R", "Gamma", "method"],
                  ((w, s, r, gm, method) for w, s, r, gm in
                   zip(res.omegas, res.s_values, res.r_values, res.gamma_values)))
        files.append(name)
        derived[method] = {"peak_S_at": float(res.omegas[int(np.argmax(res.s_values))])}
    return {"data_files": files, "derived": derived}


def _run_bath_check(cfg, outdir):
    p = parse_model(cfg)
    n = cfg["numeric"]["n_modes"]
    spin = discretize_ohmic(p.alpha, p.delta, p.omega_c, n)
    cav = discretize_cavity_bath(p.alpha_cav, p.omega, p.omega_c, n)
    dec = diagonalize_cavity_bath(p.omega, p.g, cav)
    spin.to_csv(os.path.join(outdir, "bath_spin.csv"))
    cav.to_csv(os.path.join(outdir, "bath_cavity.csv"))
    eff = DiscreteBath(dec.eigenfrequencies, dec.effective_couplings)
    eff.to_csv(os.path.join(outdir, "bath_cavity_effective.csv"))
    w = spin.frequencies
    band = (w >= 0.1 * p.omega_c) & (w <= 0.9 * p.omega_c)
    spin_dev = float(np.max(np.abs(spin.reconstructed_j()[band]
                                   / ohmic_j(w[band], p) - 1.0))) if p.alpha else 0.0
    cav_dev = float(np.max(np.abs(
        reconstruct_cavity_j(cav, p.omega)[band]
        / (np.pi * p.alpha_cav * w[band]) - 1.0))) if p.alpha_cav else 0.0
    derived = {
        "spin_sum_rule": ohmic_sum_rule(spin),
        "spin_sum_rule_target": np.pi * p.alpha * p.omega_c**2 / 2.0,
        "spin_reconstruction_max_rel_dev": spin_dev,
        "cavity_reconstruction_max_rel_dev": cav_dev,
        "residue_identity_max_dev": residue_identity_check(dec, p.omega, cav),
        "cavity_row_norm_dev": float(abs(np.sum(dec.cavity_weights**2) - 1.0)),
    }
    return {"data_files": ["bath_spin.csv", "bath_cavity.csv",
                           "bath_cavity_effective.csv"], "derived": derived}


def _run_chain_map(cfg, outdir):
    p = parse_model(cfg)
    n = cfg["numeric"]["n_modes"]
    bath, frame = solve_frame(p, n)
    chain = lanczos_chain_map(bath, frame)
    chain.to_csv(os.path.join(outdir, "chain.csv"))
    return {"data_files": ["chain.csv"],
            "derived": {"theta": chain.theta, "n_sites": chain.n_sites,
                        "delta_r": frame.delta_r,
                        "spectral_check_max_dev": chain_spectral_check(chain, bath)}}


_RUNNERS = {
    "delta_r_sweep": _run_delta_r_sweep,
    "dynamics": _run_dynamics,
    "onset_scan": _run_onset_scan,
    "spectrum": _run_spectrum,
    "bath_check": _run_bath_check,
    "chain_map": _run_chain_map,
}


def run(cfg: dict, outdir: str, jobs: int = 1) -> dict:
    """Execute one experiment; returns the manifest dict.

    Partial outputs are removed if the run fails.
    """
    cfg = validate_config(copy.deepcopy(cfg))
    os.makedirs(outdir, exist_ok=True)
    staging = os.path.join(outdir, f".staging-{os.getpid()}")
    if os.path.isdir(staging):
        shutil.rmtree(staging)
    os.makedirs(staging)
    start = time.perf_counter()
    try:
        if cfg["experiment"] == "onset_scan":
            result = _run_onset_scan(cfg, staging, jobs=jobs)
        else:
            result = _RUNNERS[cfg["experiment"]](cfg, staging)
    except Exception:
        shutil.rmtree(staging, ignore_errors=True)
        raise
    manifest = {
        "experiment": cfg["experiment"],
        "config": cfg,
        "library_version": __version__,
        "wall_time_s": time.perf_counter() - start,
        "data_files": result["data_files"],
        "derived": result["derived"],
    }
    for name in result["data_files"]:
        os.replace(os.path.join(staging, name), os.path.join(outdir, name))
    shutil.rmtree(staging, ignore_errors=True)
    _write_manifest(os.path.join(outdir, f"{cfg['experiment']}_manifest.json"), manifest)
    return manifest


# ---------------------------------------------------------------------------
# sweep over a config grid

def _set_path(cfg: dict, path: str, value):
    parts = path.split(".")
    cur = cfg
    for part in parts[:-1]:
        cur = cur.setdefault(part, {})
    cur[parts[-1]] = value


def _sweep_point(task):
    idx, cfg, outdir = task
    try:
        manifest = run(cfg, outdir, jobs=1)
        return idx, "ok", manifest
    except ConfigError as exc:
        return idx, f"config_error: {exc}", None
    except _NUMERIC_ERRORS as exc:
        return idx, f"numeric_error: {type(exc).__name__}: {exc}", None


def sweep(sweep_cfg: dict, outdir: str, jobs: int = 1) -> dict:
    """Run a grid of configs concurrently; individual failures do not abort.

    sweep_cfg = {"base": <run config>, "axes": [{"path": "model.g",
    "values": [...]}, ...]} with at most three axes. The summary CSV is
    sorted by grid coordinates regardless of completion order.
    """
    base = sweep_cfg.get("base")
    if not isinstance(base, dict):
        raise ConfigError("base", "sweep config needs a 'base' run config")
    axes = sweep_cfg.get("axes")
    if not isinstance(axes, list) or len(axes) > 3:
        raise ConfigError("axes", "must be a list of at most 3 axes")
    for i, axis in enumerate(axes):
        if not isinstance(axis, dict) or "path" not in axis or "values" not in axis:
            raise ConfigError(f"axes[{i}]", "each axis needs 'path' and 'values'")
        if not isinstance(axis["values"], list):
            raise ConfigError(f"axes[{i}].values", "must be a list (may be empty)")
    validate_config(copy.deepcopy(base))
    os.makedirs(outdir, exist_ok=True)

    grids = [[]]
    for axis in axes:
        grids = [g + [v] for g in grids for v in axis["values"]]
    tasks = []
    for idx, coords in enumerate(sorted(grids)):
        cfg = copy.deepcopy(base)
        for axis, v in zip(axes, coords):
            _set_path(cfg, axis["path"], v)
        tasks.append((idx, cfg, os.path.join(outdir, f"point_{idx:04d}")))

    if jobs > 1 and len(tasks) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_sweep_point, tasks))
    else:
        outcomes = [_sweep_point(t) for t in tasks]
    outcomes.sort(key=lambda o: o[0])

    header = [a["path"].replace(".", "_") for a in axes] + ["status", "point_dir"]
    rows = []
    statuses = {}
    for (idx, status, _manifest), (_, cfg, pdir) in zip(outcomes, tasks):
        coords = []
        for axis in axes:
            cur = cfg
            for part in axis["path"].split("."):
                cur = cur[part]
            coords.append(cur)
        rows.append(tuple(coords) + (("ok" if status == "ok" else "failed"),
                                     os.path.basename(pdir)))
        statuses[os.path.basename(pdir)] = status
    write_csv(os.path.join(outdir, "sweep_summary.csv"), header, rows)
    summary = {
        "experiment": "sweep",
        "library_version": __version__,
        "n_points": len(tasks),
        "n_failed": sum(1 for s in statuses.values() if s != "ok"),
        "statuses": statuses,
        "data_files": ["sweep_summary.csv"],
    }
    _write_manifest(os.path.join(outdir, "sweep_manifest.json"), summary)
    return summary


# ---------------------------------------------------------------------------
# figure configs

def figure_configs() -> dict:
    """Run configs for the reference ground-state, dynamics, onset,
    spectrum and bath-fidelity datasets."""
    base_model = {"delta": 1.0, "omega": 1.0, "g": 0.2, "alpha": 0.1,
                  "alpha_cav": 0.01, "omega_c": 10.0}
    fig2a = {
        "experiment": "delta_r_sweep", "model": dict(base_model),
        "numeric": {"n_modes": 256},
        "sweep": {"parameter": "alpha",
                  "values": [round(x, 3) for x in np.arange(0.0, 0.61, 0.05)]},
    }
    fig2b = {
        "experiment": "delta_r_sweep",
        "model": dict(base_model, g=0.4, alpha_cav=0.8),
        "numeric": {"n_modes": 256},
        "sweep": {"parameter": "alpha",
                  "values": [round(x, 3) for x in np.arange(0.0, 0.61, 0.05)]},
    }
    fig3 = {
        "experiment": "dynamics",
        "model": dict(base_model, omega=0.68, g=0.3),
        "numeric": {"n_modes": 512, "t_max": 200.0, "dt": 0.05},
        "g_values": [0.05, 0.3, 0.6],
    }
    fig4 = {
        "experiment": "onset_scan", "model": dict(base_model, g=0.0),
        "numeric": {"n_modes": 512, "dt": 0.05},
        "onset": {"g_min": 0.0, "g_max": 0.3, "g_step": 0.005,
                  "alphas": [0.1, 0.2, 0.3], "eps": 5e-4, "auto_retune": True},
    }
    fig5 = {
        "experiment": "spectrum",
        "model": dict(base_model, omega=0.68, g=0.3),
        "numeric": {"n_modes": 512},
        "spectrum": {"omega_grid": {"min": 0.2, "max": 1.35, "n": 1200},
                     "methods": ["exact", "markov"], "delta_r": 0.68,
                     "gamma_squared": False},
    }
    fig67 = {
        "experiment": "bath_check", "model": dict(base_model),
        "numeric": {"n_modes": 128},
    }
    chain = {
        "experiment": "chain_map", "model": dict(base_model, omega=0.68, g=0.3),
        "numeric": {"n_modes": 256},
    }
    return {"fig2a": fig2a, "fig2b": fig2b, "fig3": fig3, "fig4": fig4,
            "fig5": fig5, "fig6_7": fig67, "chain": chain}


def seed_figures(outdir: str) -> list[str]:
    os.makedirs(outdir, exist_ok=True)
    written = []
    for name, cfg in figure_configs().items():
        path = os.path.join(outdir, f"{name}.json")
        with open(path, "w") as fh:
            json.dump(cfg, fh, indent=2, sort_keys=True)
            fh.write("\n")
        written.append(path)
    return written


# ---------------------------------------------------------------------------
# entry point

def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError("--config", f"file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("--config", f"invalid JSON in {path}: {exc}") from exc


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="polaronqed",
        description="Polaron-frame simulations of a qubit ultrastrongly "
                    "coupled to a lossy cavity.")
    parser.add_argument("--seed-figures", metavar="DIR",
                        help="write the bundled figure configs to DIR and exit")
    sub = parser.add_subparsers(dest="command")
    for name in list(_SUBCOMMANDS) + ["sweep"]:
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True)
        sp.add_argument("--out", required=True)
        sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    args = parser.parse_args(argv)

    if args.seed_figures:
        for path in seed_figures(args.seed_figures):
            print(path)
        return 0
    if not args.command:
        parser.print_help()
        return 2
    try:
        cfg = _load_config(args.config)
        if args.command == "sweep":
            summary = sweep(cfg, args.out, jobs=args.jobs)
            print(f"sweep: {summary['n_points']} points, "
                  f"{summary['n_failed']} failed -> {args.out}")
            return 0
        expected = _SUBCOMMANDS[args.command]
        declared = cfg.setdefault("experiment", expected)
        if declared != expected:
            raise ConfigError("experiment",
                              f"config declares {declared!r} but subcommand "
                              f"'{args.command}' runs {expected!r}")
        manifest = run(cfg, args.out, jobs=args.jobs)
        print(f"{expected}: wrote {', '.join(manifest['data_files'])} -> {args.out}")
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except _NUMERIC_ERRORS as exc:
        print(f"numeric failure [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
