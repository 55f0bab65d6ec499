"""Secrecy rate against beta (TDM) and P_t (two-way) at one Eve position.

Usage: python3 scripts/rate_curves.py [CONFIG] [OUTPUT]
"""

import json
import sys
from pathlib import Path

from twowaysec.nearfield.model import GeometryConfig, PowerPolicy
from twowaysec.nearfield.rates import SimulationPlan, default_grid, optimize_secrecy
from twowaysec.tables import ResultTable, emit

ROOT = Path(__file__).resolve().parents[1]


def curves(cfg):
    pol = PowerPolicy(cfg["rho_min"], cfg["rho_max"])
    plan = SimulationPlan(GeometryConfig(d_ab=cfg["d_ab"], r_e=cfg["r_e"]), thetas=(cfg["theta"],),
                          policies=((pol, pol),), grid=tuple(default_grid(cfg["grid_step"])),
                          trials=cfg["trials"], seed=cfg["seed"])
    two = optimize_secrecy("two-way", plan)
    tdm = optimize_secrecy("tdm", plan)
    rows = [(x, r2, rt) for (x, r2), (_, rt) in zip(two.curve, tdm.curve)]
    return rows, two, tdm


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    cfg_path = Path(argv[0]) if argv else ROOT / "configs" / "rate_curves.json"
    out = Path(argv[1]) if len(argv) > 1 else ROOT / "results" / "rate_curves.csv"
    cfg = json.loads(cfg_path.read_text())
    rows, two, tdm = curves(cfg)
    emit(ResultTable.build(("param", "r_s_twoway_vs_p_t", "r_s_tdm_vs_beta"), rows, cfg, cfg["seed"]), "csv", out)
    print(f"two-way max {two.r_s:.4f} at P_t = {two.argmax_params['p_t']:.2f}")
    print(f"TDM     max {tdm.r_s:.4f} at beta = {tdm.argmax_params['beta']:.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
