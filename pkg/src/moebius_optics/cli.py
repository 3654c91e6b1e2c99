"""Command-line front end emitting figure data as CSV or JSON.

Exit status: 0 on success (including "none found" windows), 1 for usage and
configuration errors, 2 for computation or I/O failures.
"""
from __future__ import annotations

import csv
import io
import json
import sys
from typing import Any, Sequence

import click
import numpy as np

from .config import ConfigError, RunConfig, load_config
from .errors import DomainError, SingularResponseError
from .refraction import classify, s_tz_zero_crossings
from .response import (
    ResponseParams,
    epsilon_tensor,
    mu_tensor,
    negative_permittivity_window,
)
from .ring_model import Band, band_energy, degenerate_groups, ground_state

Table = tuple[list[str], list[list[Any]]]


def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def render(table: Table, fmt: str, extra: dict[str, Any] | None = None) -> str:
    columns, rows = table
    if fmt == "json":
        doc = {"columns": columns, "rows": [dict(zip(columns, r)) for r in rows]}
        if extra:
            doc.update(extra)
        return json.dumps(doc, indent=1, default=float) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _resonances(params: ResponseParams) -> list[float]:
    return [g[0].frequency for g in degenerate_groups(params.transitions)]


def _omega_grid(config: RunConfig, default: tuple[float, float]) -> np.ndarray:
    lo = default[0] if config.omega_min_ev is None else config.omega_min_ev
    hi = default[1] if config.omega_max_ev is None else config.omega_max_ev
    if not lo < hi:
        raise ConfigError("empty photon-energy range")
    return np.linspace(lo, hi, config.steps)


# -- table builders (library calls only) ---------------------------------------


def spectrum_table(config: RunConfig) -> Table:
    """Band energies and ground-state occupancies, sorted by energy."""
    ring = config.ring()
    spectrum, _ = ground_state(ring)
    rows = [
        [e.state.m, e.state.sigma.value, band_energy(ring, e.state), e.occupancy]
        for e in sorted(spectrum, key=lambda e: (e.energy, e.state.sigma is Band.UP, e.state.m))
    ]
    return ["m", "sigma", "energy_eV", "occupancy"], rows


def transitions_table(config: RunConfig) -> Table:
    """Allowed intra-band transitions of the ground state."""
    params = config.params()
    rows = [
        [
            t.initial.m,
            t.final.m,
            t.band.value,
            t.n_i,
            t.n_f,
            t.occupation_factor,
            t.frequency,
            t.electric_strength,
            t.magnetic_alpha,
        ]
        for t in params.transitions
    ]
    cols = ["m_initial", "m_final", "sigma", "n_i", "n_f", "occupation_factor", "frequency_eV", "electric_strength_e_nm", "magnetic_alpha"]
    return cols, rows


def epsilon_table(config: RunConfig) -> Table:
    """Permittivity versus photon energy; detuning from the lowest resonance."""
    params = config.params()
    ref = _resonances(params)[0]
    rows = []
    for w in _omega_grid(config, (ref - 0.1, ref + 0.3)):
        eps = epsilon_tensor(float(w), params)
        rows.append([float(w), float(w) - ref, eps.xx, eps.zz])
    return ["omega_eV", "detuning_eV", "eps_xx", "eps_zz"], rows


def mu_table(config: RunConfig) -> Table:
    """Permeability eigenvalues; detuning from the second resonance."""
    params = config.params()
    ref = _resonances(params)[1]
    rows = []
    for w in _omega_grid(config, (ref - 0.2, ref + 0.2)):
        mu = mu_tensor(float(w), params)
        rows.append([float(w), float(w) - ref, *mu.eigenvalues])
    return ["omega_eV", "detuning_eV", "mu1", "mu2", "mu3"], rows


def window_table(config: RunConfig) -> Table:
    """Negative-permittivity window edges and bandwidth."""
    combos = [(config.local_field, config.approx)]
    if config.compare:
        combos = [(lf, ap) for lf in (False, True) for ap in ("two_term", "full")]
    rows = []
    for local_field, approx in combos:
        params = RunConfig(**{**config.to_dict(), "local_field": local_field, "approx": approx}).params()
        w = negative_permittivity_window(params)
        rows.append(
            [
                "local" if local_field else "bare",
                approx,
                w.threshold,
                w.omega_low,
                w.omega_high,
                w.bandwidth,
                "ok" if w.found else "none found",
            ]
        )
    return ["field", "approx", "threshold", "omega_low_eV", "omega_high_eV", "bandwidth_eV", "status"], rows


_REFRACT_COLS = ["omega_eV", "detuning_eV", "theta_deg", "k_ty", "k_tz", "S_ty", "S_tz", "classification"]


def _refract_row(params: ResponseParams, ref: float, omega: float, theta: float, pol: str) -> list[Any]:
    sol = classify(omega, theta, pol, params)
    return [omega, omega - ref, theta, sol.k_ty, sol.k_tz, sol.s_ty, sol.s_tz, sol.classification]


def refract_table(config: RunConfig) -> Table:
    """Transmitted wave vector, Poynting vector and refraction class."""
    params = config.params()
    ref = _resonances(params)[0]
    if config.omega_ev is not None:
        omegas = [config.omega_ev]
    else:
        omegas = [float(w) for w in _omega_grid(config, (ref - 0.1, ref + 0.3))]
    return _REFRACT_COLS, [_refract_row(params, ref, w, config.theta_deg, config.pol) for w in omegas]


def sweep_table(config: RunConfig) -> Table:
    """(detuning, theta) grid rows followed by the S_tz = 0 contour rows."""
    params = config.params()
    ref = _resonances(params)[0]
    omegas = [float(w) for w in _omega_grid(config, (ref, ref + 2e-6))]
    thetas = np.linspace(config.theta_min_deg, config.theta_max_deg, config.theta_steps)
    rows = []
    for theta in thetas:
        for w in omegas:
            rows.append(["grid", *_refract_row(params, ref, w, float(theta), config.pol)])
    detunings = np.array(omegas) - ref
    for theta in thetas:
        if theta <= 0:
            continue
        for x in s_tz_zero_crossings(float(theta), config.pol, params, ref, detunings):
            rows.append(["contour", *_refract_row(params, ref, ref + x, float(theta), config.pol)])
    return ["kind", *_REFRACT_COLS], rows


BUILDERS = {
    "spectrum": spectrum_table,
    "transitions": transitions_table,
    "epsilon": epsilon_table,
    "mu": mu_table,
    "window": window_table,
    "refract": refract_table,
    "sweep": sweep_table,
}


# -- click wiring ----------------------------------------------------------------


def _common(f):
    opts = [
        click.option("--config", "config_path", type=click.Path(dir_okay=False), help="JSON file with RunConfig fields."),
        click.option("--n", type=int, help="Sites per sub-ring N."),
        click.option("--v-ev", type=float, help="Inter-ring hopping V (eV)."),
        click.option("--xi-ev", type=float, help="Intra-ring hopping xi (eV)."),
        click.option("--w-nm", type=float, help="Atom radius W (nm)."),
        click.option("--r-nm", type=float, help="Ring radius R (nm); default N W / pi."),
        click.option("--lifetime-ns", type=float, help="Excited-state lifetime (ns)."),
        click.option("--gamma-ev", type=float, help="Linewidth (eV); overrides the lifetime."),
        click.option("--v0-nm3", type=float, help="Volume per molecule (nm^3)."),
        click.option("--local-field/--no-local-field", default=None, help="Apply the local-field correction."),
        click.option("--approx", type=click.Choice(["full", "two-term", "two_term"]), help="Resonance terms kept."),
        click.option("--omega-min-ev", type=float),
        click.option("--omega-max-ev", type=float),
        click.option("--steps", type=int, help="Photon-energy grid points."),
        click.option("--omega-ev", type=float, help="Single photon energy (refract)."),
        click.option("--theta-deg", type=float, help="Incidence angle (deg)."),
        click.option("--theta-min-deg", type=float),
        click.option("--theta-max-deg", type=float),
        click.option("--theta-steps", type=int),
        click.option("--pol", type=click.Choice(["H", "E"])),
        click.option("--compare/--no-compare", default=None, help="window: all four bare/local x full/two-term combinations."),
        click.option("--format", "format", type=click.Choice(["csv", "json"])),
        click.option("--out", type=click.Path(dir_okay=False), help="Output file (default stdout)."),
    ]
    for opt in reversed(opts):
        f = opt(f)
    return f


@click.group()
def cli():
    """Optical response and refraction of a Moebius-ring molecular medium."""


def _make_command(name: str):
    builder = BUILDERS[name]

    @cli.command(name=name, help=(builder.__doc__ or f"Emit the {name} table.").strip())
    @_common
    def command(config_path, **flags):
        config = load_config(config_path, flags)
        text = render(builder(config), config.format, {"command": name, "config": config.to_dict()} if config.format == "json" else None)
        if config.out:
            with open(config.out, "w", newline="") as fh:
                fh.write(text)
        else:
            click.echo(text, nl=False)

    return command


for _name in BUILDERS:
    _make_command(_name)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cli.main(args=list(argv) if argv is not None else None, prog_name="moebius-optics", standalone_mode=False)
    except click.exceptions.Abort:
        return 1
    except (click.UsageError, ConfigError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except (DomainError, SingularResponseError, ArithmeticError, OSError) as exc:
        click.echo(f"computation failed: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
