"""E- and H-polarized negative-refraction bandwidth versus incidence angle."""
import argparse

import numpy as np

from moebius_optics.refraction import e_pol_bandwidth, h_pol_bandwidth
from moebius_optics.response import ResponseParams


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--theta-max", type=float, default=20.0)
    ap.add_argument("--steps", type=int, default=21)
    ap.add_argument("--local-field", action="store_true")
    args = ap.parse_args()
    params = ResponseParams(local_field=args.local_field)
    print("theta_deg,e_pol_bandwidth_eV,h_pol_bandwidth_eV")
    for theta in np.linspace(0.5, args.theta_max, args.steps):
        print(f"{theta:.4f},{e_pol_bandwidth(float(theta), params):.6e},{h_pol_bandwidth(float(theta), params):.9f}")


if __name__ == "__main__":
    main()
