"""Plane-wave refraction from vacuum into the hyperbolic Moebius medium.

Geometry: the interface normal is y, pointing into the medium along -y, so a
transmitted wave carries energy into the medium when ``S_ty < 0``. The wave
vector lies in the y-z plane with tangential component ``k_tz = k0 sin(theta)
>= 0``. Both polarizations share the dispersion relation

    eps_y k_ty^2 + eps_z k_tz^2 = k0^2 eps_y eps_z mu_xx

and the negative root for ``k_ty`` is taken. Poynting vectors are reported for
unit transmitted field amplitude with eps0 = mu0 = 1 and omega in eV, so only
signs and ratios carry physical meaning.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .constants import HBAR_C_EV_NM
from .errors import DomainError, SingularResponseError
from .response import (
    PermeabilityTensor,
    PermittivityTensor,
    ResponseParams,
    epsilon_tensor,
    mu_tensor,
    negative_permittivity_window,
)
from .roots import sign_change_roots


class Polarization(str, Enum):
    H = "H"
    E = "E"


@dataclass(frozen=True)
class IncidentWave:
    polarization: Polarization
    omega: float
    theta_deg: float

    def __post_init__(self):
        if not 0.0 <= self.theta_deg < 90.0:
            raise DomainError(f"incidence angle must lie in [0, 90) deg, got {self.theta_deg}")
        if not self.omega > 0:
            raise DomainError("photon energy must be positive")

    @property
    def k_magnitude(self) -> float:
        """Vacuum wave number in rad/nm."""
        return self.omega / HBAR_C_EV_NM

    @property
    def k_iz(self) -> float:
        return self.k_magnitude * math.sin(math.radians(self.theta_deg))

    @property
    def k_iy(self) -> float:
        return self.k_magnitude * math.cos(math.radians(self.theta_deg))


@dataclass(frozen=True)
class RefractionSolution:
    wave: IncidentWave
    k_ty: float | None
    k_tz: float
    s_ty: float | None
    s_tz: float | None
    classification: str

    @property
    def propagating(self) -> bool:
        return self.k_ty is not None


def solve_transverse_k(omega: float, theta_deg: float, epsilon: PermittivityTensor, mu: PermeabilityTensor) -> float | None:
    """Normal component ``k_ty`` (negative branch), or ``None`` when evanescent."""
    eps_y, eps_z = epsilon.yy, epsilon.zz
    if eps_y == 0:
        raise SingularResponseError("eps_y = 0: dispersion relation degenerates")
    wave = IncidentWave(Polarization.H, omega, theta_deg)
    k0, k_tz = wave.k_magnitude, wave.k_iz
    radicand = k0 * k0 * eps_z * mu.xx - eps_z * k_tz * k_tz / eps_y
    if radicand < 0:
        return None
    return -math.sqrt(radicand)


def dispersion_residual(omega: float, k_ty: float, k_tz: float, epsilon: PermittivityTensor, mu: PermeabilityTensor) -> float:
    """Relative residual of the dispersion relation (0 for an exact solution)."""
    k0 = omega / HBAR_C_EV_NM
    eps_y, eps_z = epsilon.yy, epsilon.zz
    lhs = (eps_y * k_ty * k_ty, eps_z * k_tz * k_tz)
    rhs = k0 * k0 * eps_y * eps_z * mu.xx
    scale = max(abs(lhs[0]), abs(lhs[1]), abs(rhs))
    return abs(lhs[0] + lhs[1] - rhs) / scale


def poynting_h(k_ty: float, k_tz: float, epsilon: PermittivityTensor, omega: float) -> tuple[float, float]:
    eps_y, eps_z = epsilon.yy, epsilon.zz
    if eps_y == 0 or eps_z == 0:
        raise SingularResponseError("vanishing permittivity component in H-polarized flux")
    return k_ty / (2.0 * omega * eps_z), k_tz / (2.0 * omega * eps_y)


def poynting_e(k_ty: float, k_tz: float, mu: PermeabilityTensor, omega: float) -> tuple[float, float]:
    mu1 = mu.mu1
    if mu1 == 0:
        raise SingularResponseError("mu1 = 0 in E-polarized flux")
    pre = 1.0 / (2.0 * omega * mu1)
    return pre * (mu.yz * k_tz + mu.xx * k_ty), pre * (mu.xx * k_tz + mu.yz * k_ty)


def classify(omega: float, theta_deg: float, polarization: Polarization | str, params: ResponseParams, offset: float = 0.0) -> RefractionSolution:
    """Transmitted wave vector, flux and refraction class at ``omega + offset``.

    Negative refraction means the transmitted flux bends to the incident
    side of the normal (``S_tz < 0`` with ``k_tz > 0``); normal incidence is
    always classified positive.
    """
    pol = Polarization(polarization)
    wave = IncidentWave(pol, omega + offset, theta_deg)
    eps = epsilon_tensor(omega, params, offset)
    mu = mu_tensor(omega, params, offset)
    k_tz = wave.k_iz
    k_ty = solve_transverse_k(wave.omega, theta_deg, eps, mu)
    if k_ty is None:
        return RefractionSolution(wave, None, k_tz, None, None, "evanescent")
    if pol is Polarization.H:
        s_ty, s_tz = poynting_h(k_ty, k_tz, eps, wave.omega)
    else:
        s_ty, s_tz = poynting_e(k_ty, k_tz, mu, wave.omega)
    negative = theta_deg > 0 and s_tz < 0
    return RefractionSolution(wave, k_ty, k_tz, s_ty, s_tz, "negative" if negative else "positive")


def _measure_positive(f, grid: np.ndarray) -> float:
    # total length of the subset of [grid[0], grid[-1]] where f > 0
    roots = [r for r, _ in sign_change_roots(f, grid)]
    edges = [grid[0], *roots, grid[-1]]
    inside = f(grid[0]) > 0
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if inside:
            total += b - a
        inside = not inside
    return total


def _window_grid(low: float, high: float, gamma: float, points: int) -> np.ndarray:
    uniform = np.linspace(low, high, points)
    ramp = np.geomspace(gamma * 1e-3, high, points)
    grid = np.unique(np.concatenate([uniform, ramp, high - (ramp - low)]))
    return grid[(grid >= low) & (grid <= high)]


def negative_bandwidth(theta_deg: float, polarization: Polarization | str, params: ResponseParams, points: int = 2001) -> float:
    """Measure (eV) of photon energies inside the negative-permittivity window
    where the transmitted flux refracts negatively."""
    if not 0.0 < theta_deg < 90.0:
        raise DomainError("bandwidth scan needs 0 < theta < 90 deg")
    window = negative_permittivity_window(params)
    if not window.found:
        return 0.0
    ref = window.reference

    def flux_down(x: float) -> float:
        sol = classify(ref, theta_deg, polarization, params, offset=x)
        return 0.0 if sol.s_tz is None else -sol.s_tz

    grid = _window_grid(window.detuning_low, window.detuning_high, params.gamma, points)
    return _measure_positive(flux_down, grid)


def e_pol_bandwidth(theta_deg: float, params: ResponseParams, points: int = 2001) -> float:
    return negative_bandwidth(theta_deg, Polarization.E, params, points)


def h_pol_bandwidth(theta_deg: float, params: ResponseParams, points: int = 2001) -> float:
    return negative_bandwidth(theta_deg, Polarization.H, params, points)


def s_tz_zero_crossings(theta_deg: float, polarization: Polarization | str, params: ResponseParams, reference: float, detunings: np.ndarray) -> list[float]:
    """Detunings (from ``reference``) where ``S_tz`` changes sign along a scan."""

    def s_tz(x: float) -> float:
        sol = classify(reference, theta_deg, polarization, params, offset=x)
        return 0.0 if sol.s_tz is None else sol.s_tz

    return [r for r, _ in sign_change_roots(s_tz, np.asarray(detunings, dtype=float))]
