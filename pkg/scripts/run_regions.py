"""Run every analytic region and comparison command from its config.

Usage: python3 scripts/run_regions.py [OUTPUT_DIR] [--fine]
"""

import sys
from pathlib import Path

from twowaysec.cli import run

ROOT = Path(__file__).resolve().parents[1]
JOBS = [
    ("region-fd-modulo", "fig1_fd_modulo.json"),
    ("region-hd-modulo", "fig1_hd_modulo.json"),
    ("region-fd-gaussian", "fig2_fd_gaussian.json"),
    ("compare-gaussian", "fig3_compare.json"),
    ("region-hd-gaussian", "fig3_hd_gaussian.json"),
    ("asymptote", "asymptote.json"),
]


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    fine = ["--fine"] if "--fine" in argv else []
    rest = [a for a in argv if a != "--fine"]
    out = Path(rest[0]) if rest else ROOT / "results"
    for command, cfg in JOBS:
        target = out / f"{Path(cfg).stem}.csv"
        code = run([command, "--config", str(ROOT / "configs" / cfg), "-o", str(target), *fine])
        print(f"{command:20s} -> {target} (exit {code})")
        if code:
            return code
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
