"""Write every data table as CSV into one directory by driving the CLI."""
import argparse
from pathlib import Path

from moebius_optics.cli import main as cli

RUNS = {
    "spectrum.csv": ["spectrum"],
    "transitions.csv": ["transitions"],
    "epsilon_bare.csv": ["epsilon", "--steps", "2001"],
    "epsilon_local.csv": ["epsilon", "--steps", "2001", "--local-field"],
    "mu.csv": ["mu", "--steps", "2001"],
    "windows.csv": ["window", "--compare"],
    "refract_h.csv": ["refract", "--pol", "H", "--steps", "401"],
    "sweep_e.csv": ["sweep", "--pol", "E", "--steps", "201", "--theta-min-deg", "0", "--theta-max-deg", "10", "--theta-steps", "11"],
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", type=Path)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name, argv in RUNS.items():
        code = cli([*argv, "--out", str(args.outdir / name)])
        print(f"{name}: exit {code}")
        if code:
            raise SystemExit(code)


if __name__ == "__main__":
    main()
