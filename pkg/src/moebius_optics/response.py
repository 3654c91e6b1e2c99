"""Linear-response permittivity and permeability of a Moebius-ring medium.

Each allowed intra-band transition contributes a Lorentzian term

    eta'_t(omega) = P_t * dw / (dw**2 + gamma**2),   dw = omega - Delta_t,
    P_t = n_i / (n_f + 1) * e^2 |d_x|^2 / (eps0 v0)

with ``|d_x| = R / 2``. The in-plane permittivity is ``1 - sum(eta'_t)``; the
permeability picks up ``alpha_t**2 * eta'_t`` with a polarization pattern
fixed by the magnetic dipole element of each transition. With local-field
correction the bare susceptibility ``chi`` is replaced by
``(1 - chi/3)^-1 chi``.

All energies (omega, gamma, detunings) are in eV.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import COULOMB_EV_NM, HBAR_EV_S
from .errors import DomainError, SingularResponseError
from .ring_model import (
    Band,
    MoebiusRing,
    Transition,
    degenerate_groups,
    electric_matrix_element,
    ground_state,
)
from .roots import sign_change_roots

APPROXIMATIONS = ("full", "two_term")

# magnetic dipole polarization vectors u, with <i|H_B|f> proportional to u . B
_MAGNETIC_PATTERN = {
    (Band.UP, 1): np.array([1j, 1.0, -1.0]),
    (Band.UP, -1): np.array([1j, -1.0, 1.0]),
    (Band.DOWN, 1): np.array([1j, 1.0, -1.0]),
    (Band.DOWN, -1): np.array([-1j, 1.0, -1.0]),
}


def default_v0(ring: MoebiusRing) -> float:
    """Volume per molecule, 2 pi (R + W)^2 W, in nm^3."""
    return 2.0 * math.pi * (ring.ring_radius + ring.atom_radius) ** 2 * ring.atom_radius


def gamma_from_lifetime(lifetime_ns: float) -> float:
    return HBAR_EV_S / (lifetime_ns * 1e-9)


def coupling_constant(ring: MoebiusRing, v0: float | None = None) -> float:
    """C = e^2 R^2 / (2 eps0 v0) in eV."""
    if v0 is None:
        v0 = default_v0(ring)
    return 2.0 * math.pi * COULOMB_EV_NM * ring.ring_radius**2 / v0


@dataclass(frozen=True)
class ResponseParams:
    """Medium and linewidth settings.

    ``gamma`` (eV) overrides ``lifetime_ns`` when both are given.
    ``approximation="two_term"`` keeps only the two lowest resonances, the
    pair that brackets the negative-permittivity window.
    """

    ring: MoebiusRing = field(default_factory=MoebiusRing)
    lifetime_ns: float | None = 4.0
    gamma: float | None = None
    v0: float | None = None
    local_field: bool = False
    approximation: str = "full"
    n_electrons: int | None = None
    transitions: tuple[Transition, ...] = field(init=False, repr=False, compare=False)
    channels: tuple[tuple["Channel", ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.gamma is None:
            if self.lifetime_ns is None or not self.lifetime_ns > 0:
                raise DomainError("need a positive lifetime_ns or gamma")
            object.__setattr__(self, "gamma", gamma_from_lifetime(self.lifetime_ns))
        if not self.gamma > 0:
            raise DomainError("gamma must be positive")
        if self.v0 is None:
            object.__setattr__(self, "v0", default_v0(self.ring))
        if not self.v0 > 0:
            raise DomainError("v0 must be positive")
        if self.approximation not in APPROXIMATIONS:
            raise DomainError(f"approximation must be one of {APPROXIMATIONS}")
        _, transitions = ground_state(self.ring, self.n_electrons)
        object.__setattr__(self, "transitions", tuple(transitions))
        groups = degenerate_groups(transitions)
        if self.approximation == "two_term":
            groups = groups[:2]
        channels = tuple(tuple(Channel.of(t, self.ring, self.v0) for t in g) for g in groups)
        object.__setattr__(self, "channels", channels)

    @property
    def coupling_constant(self) -> float:
        return coupling_constant(self.ring, self.v0)

    @property
    def threshold(self) -> float:
        """Value of eta' at which the in-plane permittivity changes sign."""
        return 1.5 if self.local_field else 1.0

    def active_transitions(self) -> list[Transition]:
        return [c.transition for g in self.channels for c in g]


@dataclass(frozen=True)
class Channel:
    """Per-transition constants of the response sums."""

    transition: Transition
    prefactor: float
    alpha2: float
    electric_pattern: np.ndarray
    magnetic_pattern: np.ndarray

    @classmethod
    def of(cls, t: Transition, ring: MoebiusRing, v0: float) -> "Channel":
        g = electric_matrix_element(ring, t.initial, t.final)
        # e^2/eps0 = 4 pi e^2/(4 pi eps0)
        prefactor = t.occupation_factor * 4.0 * math.pi * COULOMB_EV_NM * abs(g[0]) ** 2 / v0
        u = _MAGNETIC_PATTERN[t.band, t.step]
        return cls(
            t,
            prefactor,
            t.magnetic_alpha**2,
            np.outer(g, g.conj()) / abs(g[0]) ** 2,
            np.outer(u, u.conj()),
        )


@dataclass(frozen=True)
class EtaTerm:
    transition: Transition
    prefactor: float
    value_real: float


def eta_prefactor(transition: Transition, params: ResponseParams) -> float:
    """n_i e^2 R^2 / (4 (n_f + 1) eps0 v0), in eV."""
    return Channel.of(transition, params.ring, params.v0).prefactor


def _lorentz(dw: float, gamma: float) -> float:
    return dw / (dw * dw + gamma * gamma)


def eta_prime(transition: Transition, omega: float, params: ResponseParams, offset: float = 0.0) -> float:
    """Real part of one transition's response term at ``omega + offset``.

    Passing a small ``offset`` next to a resonant ``omega`` keeps the
    detuning exact where ``omega + offset`` would round.
    """
    dw = (omega - transition.frequency) + offset
    return eta_prefactor(transition, params) * _lorentz(dw, params.gamma)


def _values(omega: float, params: ResponseParams, offset: float) -> list[list[tuple[Channel, float]]]:
    gamma = params.gamma
    return [
        [(c, c.prefactor * _lorentz((omega - c.transition.frequency) + offset, gamma)) for c in group]
        for group in params.channels
    ]


def _grouped_sum(values, term):
    # degenerate partners are summed first so antisymmetric parts cancel exactly
    total = 0.0
    for group in values:
        sub = 0.0
        for c, v in group:
            sub = sub + term(c, v)
        total = total + sub
    return total


def eta_terms(omega: float, params: ResponseParams, offset: float = 0.0) -> list[EtaTerm]:
    return [EtaTerm(c.transition, c.prefactor, v) for g in _values(omega, params, offset) for c, v in g]


def eta_prime_total(omega: float, params: ResponseParams, offset: float = 0.0) -> float:
    return float(_grouped_sum(_values(omega, params, offset), lambda c, v: v))


def _local_field(chi: np.ndarray) -> np.ndarray:
    denom = np.eye(3) - chi / 3.0
    if np.min(np.abs(np.linalg.eigvals(denom))) < 1e-12:
        raise SingularResponseError("local-field denominator 1 - chi/3 is singular")
    return np.linalg.solve(denom, chi)


@dataclass(frozen=True)
class PermittivityTensor:
    omega: float
    components: np.ndarray
    eta_prime: float

    @property
    def xx(self) -> float:
        return float(self.components[0, 0].real)

    @property
    def yy(self) -> float:
        return float(self.components[1, 1].real)

    @property
    def zz(self) -> float:
        return float(self.components[2, 2].real)

    @property
    def eigenvalues(self) -> tuple[float, float, float]:
        return self.xx, self.yy, self.zz


def epsilon_tensor(omega: float, params: ResponseParams, offset: float = 0.0) -> PermittivityTensor:
    values = _values(omega, params, offset)
    chi = -np.asarray(_grouped_sum(values, lambda c, v: v * c.electric_pattern))
    if params.local_field:
        chi = _local_field(chi)
    eta = float(_grouped_sum(values, lambda c, v: v))
    return PermittivityTensor(omega + offset, np.eye(3) + chi, eta)


@dataclass(frozen=True)
class PermeabilityTensor:
    """Relative permeability.

    ``beta`` and ``beta1`` are the bare sums ``sum(alpha^2 eta')`` and
    ``sum(+-alpha^2 eta')``; ``eigenvalues`` are ``(mu1, mu2, mu3)`` along
    ``(0,1,-1)``, ``x`` and ``(0,1,1)``.
    """

    omega: float
    components: np.ndarray
    beta: float
    beta1: float

    @property
    def xx(self) -> float:
        return float(self.components[0, 0].real)

    @property
    def yz(self) -> float:
        return float(self.components[1, 2].real)

    @property
    def eigenvalues(self) -> tuple[float, float, float]:
        c = self.components
        mu1 = (c[1, 1] + c[2, 2] - c[1, 2] - c[2, 1]).real / 2.0
        mu3 = (c[1, 1] + c[2, 2] + c[1, 2] + c[2, 1]).real / 2.0
        return float(mu1), float(c[0, 0].real), float(mu3)

    @property
    def mu1(self) -> float:
        return self.eigenvalues[0]


def mu_tensor(omega: float, params: ResponseParams, offset: float = 0.0) -> PermeabilityTensor:
    values = _values(omega, params, offset)
    beta = float(_grouped_sum(values, lambda c, v: c.alpha2 * v))
    beta1 = float(_grouped_sum(values, lambda c, v: c.transition.step * c.alpha2 * v))
    chi = -np.asarray(_grouped_sum(values, lambda c, v: c.alpha2 * v * c.magnetic_pattern))
    if params.local_field:
        chi = _local_field(chi)
    return PermeabilityTensor(omega + offset, np.eye(3) + chi, beta, beta1)


@dataclass(frozen=True)
class PermittivityWindow:
    """Interval of negative in-plane permittivity between the two lowest resonances.

    Edges are stored both as photon energies and as detunings from
    ``reference`` (the lower resonance); the detunings carry full precision.
    """

    reference: float
    upper_resonance: float
    detuning_low: float | None
    detuning_high: float | None
    threshold: float

    @property
    def found(self) -> bool:
        return self.detuning_low is not None

    @property
    def omega_low(self) -> float | None:
        return None if not self.found else self.reference + self.detuning_low

    @property
    def omega_high(self) -> float | None:
        return None if not self.found else self.reference + self.detuning_high

    @property
    def bandwidth(self) -> float:
        return 0.0 if not self.found else self.detuning_high - self.detuning_low


def _pole_grid(span: float, gamma: float, points: int = 400) -> np.ndarray:
    # dense near both poles, down to well inside the linewidth
    ramp = np.geomspace(gamma * 1e-3, span / 2.0, points)
    return np.unique(np.concatenate([[0.0], ramp, span - ramp, [span]]))


def negative_permittivity_window(params: ResponseParams) -> PermittivityWindow:
    if len(params.channels) < 2:
        raise DomainError("need at least two distinct resonances to bound a window")
    lo = params.channels[0][0].transition.frequency
    hi = params.channels[1][0].transition.frequency
    threshold = params.threshold

    def excess(x: float) -> float:
        return eta_prime_total(lo, params, offset=x) - threshold

    roots = sign_change_roots(excess, _pole_grid(hi - lo, params.gamma))
    low = next((r for r, d in roots if d > 0), None)
    high = next((r for r, d in roots if d < 0 and low is not None and r > low), None)
    if low is None or high is None:
        return PermittivityWindow(lo, hi, None, None, threshold)
    return PermittivityWindow(lo, hi, low, high, threshold)


def threshold_crossings(params: ResponseParams, omega_min: float, omega_max: float, points: int = 4001) -> list[float]:
    """Every photon energy in the range where eta' crosses the sign-change threshold.

    Unlike :func:`negative_permittivity_window` this does not restrict the
    search to the inter-resonance interval.
    """
    grid = [np.linspace(omega_min, omega_max, points)]
    for t in params.active_transitions():
        if omega_min < t.frequency < omega_max:
            ramp = np.geomspace(params.gamma * 1e-3, 0.5, 200)
            grid.append(t.frequency + ramp)
            grid.append(t.frequency - ramp)
    x = np.unique(np.concatenate(grid))
    x = x[(x >= omega_min) & (x <= omega_max)]
    return [r for r, _ in sign_change_roots(lambda w: eta_prime_total(w, params) - params.threshold, x)]
