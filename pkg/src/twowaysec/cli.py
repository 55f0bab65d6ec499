"""Command-line front end.

Each subcommand has a flat parameter record. Values come from the defaults,
then an optional JSON file (--config), then explicit flags. The result is
written as CSV or JSON to --output, or to $TWOWAYSEC_OUTPUT_DIR/<command>.<fmt>.

Exit codes: 0 success, 2 invalid configuration, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from .errors import ConfigError, ConstraintError, DomainError, QuadratureError
from .fullduplex import (GaussianChannel, GaussianSweep, ModuloChannel, backward_key_region,
                         fg_region, fm_region, he_yener_region)
from .geometry import boundary_samples
from .halfduplex import GaussianHDSweep, ModuloSweep, hg_region, hm_region
from .nearfield.model import GeometryConfig, PowerPolicy
from .nearfield.rates import SimulationPlan, asymptotic_rmax, default_grid, default_thetas, optimize_secrecy
from .tables import ResultTable, emit

OUTPUT_ENV = "TWOWAYSEC_OUTPUT_DIR"

_MODULO = {"eps1": 0.2, "eps2": 0.3, "eps_e": 0.25}
_GAUSS = {"ge1": 5.0, "ge2": 0.1, "rho1": 1.0, "rho2": 1.0}
_SIM = {
    "d_ab": 1.0, "r_e": 100.0, "alpha_pl": 2.0, "wavelength": 0.125,
    "rho_min": 1.0, "rho_max": 100.0, "law": "continuous-uniform", "levels": [],
    "n_theta": 64, "theta_min": 0.0, "theta_max": math.pi / 2,
    "grid_step": 0.01, "trials": 100_000, "seed": 0, "noiseless_main": True,
}

COMMANDS = {
    "region-fd-modulo": dict(_MODULO, grid_step=0.01, samples=0),
    "region-fd-gaussian": dict(_GAUSS, levels=50, restrict="none", samples=0),
    "region-hd-modulo": dict(_MODULO, prefix_step=0.1, mu_step=0.1, sched_step=0.1, samples=0),
    "region-hd-gaussian": dict(_GAUSS, sched_step=0.1, rho_levels=4, share_levels=5, samples=0),
    "compare-gaussian": dict(_GAUSS, levels=50, alpha_step=1e-3),
    "sim-tdm": dict(_SIM),
    "sim-twoway": dict(_SIM, family="binary"),
    "asymptote": {"rho_min": 1.0, "d_ab": 1.0, "alpha_pl": 2.0, "noiseless_main": True, "step": 1e-5},
}

# keys whose resolution --fine doubles: steps halve, counts double
_FINE_STEPS = ("grid_step", "prefix_step", "mu_step", "sched_step", "alpha_step", "step")
_FINE_COUNTS = ("levels", "rho_levels", "share_levels", "n_theta")

COMPARE_CURVES = ("full-region", "he-yener", "backward-key", "binning-only")


def _coerce(key, value, default):
    if isinstance(default, bool):
        if isinstance(value, bool):
            return value
        if isinstance(value, str) and value.lower() in ("true", "1", "yes", "on", "false", "0", "no", "off"):
            return value.lower() in ("true", "1", "yes", "on")
        raise ConfigError(key, f"expected a boolean, got {value!r}")
    if isinstance(default, list):
        if isinstance(value, str):
            try:
                value = json.loads(value)
            except json.JSONDecodeError as exc:
                raise ConfigError(key, f"expected a JSON list: {exc}") from None
        if not isinstance(value, list):
            raise ConfigError(key, f"expected a list, got {value!r}")
        return [_coerce(key, v, 0.0) for v in value]
    if isinstance(default, int):
        try:
            f = float(value)
        except (TypeError, ValueError):
            raise ConfigError(key, f"expected an integer, got {value!r}") from None
        if not f.is_integer():
            raise ConfigError(key, f"expected an integer, got {value!r}")
        return int(f)
    if isinstance(default, float):
        if isinstance(value, bool):
            raise ConfigError(key, f"expected a number, got {value!r}")
        try:
            f = float(value)
        except (TypeError, ValueError):
            raise ConfigError(key, f"expected a number, got {value!r}") from None
        if not math.isfinite(f):
            raise ConfigError(key, f"expected a finite number, got {value!r}")
        return f
    return str(value)


def resolve_config(command, file_values=None, overrides=None, fine=False) -> dict:
    defaults = COMMANDS[command]
    cfg = dict(defaults)
    for source in (file_values or {}, overrides or {}):
        for key, value in source.items():
            if key not in defaults:
                raise ConfigError(key, f"unknown key for {command}")
            cfg[key] = _coerce(key, value, defaults[key])
    if fine:
        for key in _FINE_STEPS:
            if key in cfg:
                cfg[key] = cfg[key] / 2
        for key in _FINE_COUNTS:
            if key in cfg and isinstance(cfg[key], int):
                cfg[key] = cfg[key] * 2
    return cfg


def _positive(cfg, key):
    if cfg[key] <= 0:
        raise ConfigError(key, f"must be positive, got {cfg[key]}")


def _region_rows(region, samples):
    if samples < 0:
        raise ConfigError("samples", "must be >= 0")
    if samples == 0:
        return [tuple(v) for v in region.vertices]
    return [tuple(p) for p in boundary_samples(region, samples)]


def _modulo(cfg):
    try:
        return ModuloChannel(cfg["eps1"], cfg["eps2"], cfg["eps_e"])
    except DomainError as exc:
        raise ConfigError("eps", str(exc)) from None


def _gauss(cfg):
    for k in _GAUSS:
        if cfg[k] < 0:
            raise ConfigError(k, f"must be non-negative, got {cfg[k]}")
    return GaussianChannel(cfg["ge1"], cfg["ge2"], cfg["rho1"], cfg["rho2"])


def _run_fd_modulo(cfg):
    region = fm_region(_modulo(cfg), cfg["grid_step"])
    return ("r1", "r2"), _region_rows(region, cfg["samples"]), {}


def _run_fd_gaussian(cfg):
    restrict = None if cfg["restrict"] == "none" else cfg["restrict"]
    if restrict not in (None, "no-prefix", "bin-jam"):
        raise ConfigError("restrict", "must be none, no-prefix or bin-jam")
    region = fg_region(_gauss(cfg), GaussianSweep(cfg["levels"], restrict))
    return ("r1", "r2"), _region_rows(region, cfg["samples"]), {}


def _run_hd_modulo(cfg):
    sweep = ModuloSweep(cfg["prefix_step"], cfg["mu_step"], cfg["sched_step"])
    return ("r1", "r2"), _region_rows(hm_region(_modulo(cfg), sweep), cfg["samples"]), {}


def _run_hd_gaussian(cfg):
    ch = _gauss(cfg)
    if ch.ge1 <= 0 or ch.ge2 <= 0:
        raise ConfigError("ge1", "power equalization at Eve needs ge1, ge2 > 0")
    sweep = GaussianHDSweep(cfg["sched_step"], cfg["rho_levels"], cfg["share_levels"])
    return ("r1", "r2"), _region_rows(hg_region(ch, sweep), cfg["samples"]), {}


def _run_compare(cfg):
    ch = _gauss(cfg)
    regions = (
        fg_region(ch, GaussianSweep(cfg["levels"])),
        he_yener_region(ch, cfg["alpha_step"]),
        backward_key_region(ch, cfg["alpha_step"]),
        fg_region(ch, GaussianSweep(cfg["levels"], "no-prefix")),
    )
    rows = [(i, x, y) for i, reg in enumerate(regions) for x, y in reg.vertices]
    return ("curve_id", "r1", "r2"), rows, {"curves": list(COMPARE_CURVES)}


def _sim_plan(cfg, family="binary"):
    for k in ("d_ab", "r_e", "alpha_pl", "wavelength", "grid_step"):
        _positive(cfg, k)
    if cfg["trials"] <= 0:
        raise ConfigError("trials", f"must be a positive integer, got {cfg['trials']}")
    if cfg["n_theta"] < 1:
        raise ConfigError("n_theta", "must be >= 1")
    if not 0 <= cfg["theta_min"] <= cfg["theta_max"] <= math.pi:
        raise ConfigError("theta_min", "need 0 <= theta_min <= theta_max <= pi")
    geo = GeometryConfig(d_ab=cfg["d_ab"], r_e=cfg["r_e"], alpha_pl=cfg["alpha_pl"],
                         k_wave=2 * math.pi / cfg["wavelength"])
    levels = tuple(cfg["levels"]) if cfg["law"] == "discrete-uniform" else ()
    pol = PowerPolicy(cfg["rho_min"], cfg["rho_max"], cfg["law"], levels)
    if cfg["n_theta"] == 1:
        thetas = (cfg["theta_min"],)
    else:
        thetas = tuple(default_thetas(cfg["n_theta"]) * (cfg["theta_max"] - cfg["theta_min"])
                       / (math.pi / 2) + cfg["theta_min"])
    return SimulationPlan(geo, thetas=thetas, policies=((pol, pol),), grid=tuple(default_grid(cfg["grid_step"])),
                          trials=cfg["trials"], seed=cfg["seed"], noiseless_main=cfg["noiseless_main"],
                          family=family)


def _sim_summary(rep):
    out = {"r_s": rep.r_s, "r_m": rep.r_m, "worst_theta": rep.worst_theta,
           "worst_classifier": rep.worst_classifier}
    out.update(rep.argmax_params)
    for name in ("r_e", "r_ea", "r_eb", "d_a", "d_b"):
        v = getattr(rep, name)
        if v is not None:
            out[name] = v
    (label, st), = rep.stats.items()
    if hasattr(st, "misclassification"):
        out["misclassification"] = st.misclassification()
    else:
        out.update(p_m=st.p_m, p_f=st.p_f, p_e_given_m=st.p_e_given_m)
    return out


def _run_sim_tdm(cfg):
    rep = optimize_secrecy("tdm", _sim_plan(cfg))
    return ("beta", "r_s"), list(rep.curve), {"summary": _sim_summary(rep)}


def _run_sim_twoway(cfg):
    rep = optimize_secrecy("two-way", _sim_plan(cfg, cfg["family"]))
    return ("p_t", "r_s"), list(rep.curve), {"summary": _sim_summary(rep)}


def _run_asymptote(cfg):
    for k in ("rho_min", "d_ab", "alpha_pl", "step"):
        _positive(cfg, k)
    n = int(round(1.0 / cfg["step"]))
    grid = [i / n for i in range(n + 1)]
    rep = asymptotic_rmax(grid, cfg["rho_min"], cfg["d_ab"], cfg["alpha_pl"], cfg["noiseless_main"])
    return ("p_t", "r_max"), [(rep.argmax_params["p_t"], rep.r_s)], {}


RUNNERS = {
    "region-fd-modulo": _run_fd_modulo,
    "region-fd-gaussian": _run_fd_gaussian,
    "region-hd-modulo": _run_hd_modulo,
    "region-hd-gaussian": _run_hd_gaussian,
    "compare-gaussian": _run_compare,
    "sim-tdm": _run_sim_tdm,
    "sim-twoway": _run_sim_twoway,
    "asymptote": _run_asymptote,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="twowaysec", description="Two-way wiretap secrecy regions and simulations.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, defaults in COMMANDS.items():
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON file with parameter values")
        p.add_argument("--output", "-o", help="output file path")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--fine", action="store_true", help="double every grid resolution")
        for key in defaults:
            p.add_argument("--" + key.replace("_", "-"), dest="opt_" + key, default=None, metavar="VALUE")
    return parser


def compute(command, cfg) -> ResultTable:
    columns, rows, extra = RUNNERS[command](cfg)
    return ResultTable.build(columns, rows, cfg, seed=cfg.get("seed"), command=command, **extra)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        file_values = {}
        if args.config:
            try:
                file_values = json.loads(Path(args.config).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError("config", f"cannot read {args.config}: {exc}") from None
            if not isinstance(file_values, dict):
                raise ConfigError("config", "top level must be a JSON object")
        overrides = {k[4:]: v for k, v in vars(args).items() if k.startswith("opt_") and v is not None}
        cfg = resolve_config(args.command, file_values, overrides, args.fine)
        table = compute(args.command, cfg)
        out = args.output or Path(os.environ.get(OUTPUT_ENV, ".")) / f"{args.command}.{args.format}"
        path = emit(table, args.format, out)
    except (ConfigError, DomainError, ConstraintError) as exc:
        print(f"twowaysec: invalid configuration: {exc}", file=sys.stderr)
        return 2
    except QuadratureError as exc:
        print(f"twowaysec: numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"twowaysec: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {path}", file=sys.stderr)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
