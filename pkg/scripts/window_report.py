"""Negative-permittivity windows for every mode, plus the threshold roots the window logic discards."""
from moebius_optics.response import ResponseParams, negative_permittivity_window, threshold_crossings


def main():
    base = ResponseParams()
    print(f"C = {base.coupling_constant:.9f} eV, gamma = {base.gamma:.6e} eV, v0 = {base.v0:.6f} nm^3")
    for local_field in (False, True):
        for approx in ("two_term", "full"):
            params = ResponseParams(local_field=local_field, approximation=approx)
            w = negative_permittivity_window(params)
            far = [x for x in threshold_crossings(params, w.upper_resonance, 80.0) if x > 10.0]
            label = f"{'local' if local_field else 'bare':5s} {approx:8s}"
            print(f"{label} [{w.omega_low:.10f}, {w.omega_high:.10f}] eV  bandwidth {w.bandwidth:.12f} eV  far roots {['%.4f' % x for x in far]}")


if __name__ == "__main__":
    main()
