"""Tight-binding model of a double-ring Moebius molecule.

Two sub-rings ``a`` and ``b`` of ``N`` sites each are coupled by rungs of
strength ``V`` and by nearest-neighbour hops ``xi`` along each sub-ring. The
twisted closure ``a_N = b_0``, ``b_N = a_0`` is removed by a local unitary
transform, leaving two pseudo-spin bands

    E_up(k)   =  V - 2 xi cos(k - delta/2)
    E_down(k) = -V - 2 xi cos(k)

with ``k = m * delta`` and ``delta = 2 pi / N``. The dense site-basis
Hamiltonian is kept alongside as a brute-force check of the analytic bands,
eigenstates and dipole matrix elements.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .constants import HBAR_C_EV_NM
from .errors import DomainError

# Energies closer than this are treated as one degenerate multiplet (eV).
DEGENERACY_TOL = 1e-9


class Band(str, Enum):
    UP = "up"
    DOWN = "down"


@dataclass(frozen=True)
class MoebiusRing:
    """Geometry and hopping parameters; lengths in nm, energies in eV.

    ``ring_radius`` defaults to ``N W / pi``.
    """

    n_sites_per_ring: int = 12
    atom_radius: float = 0.077
    inter_ring_hop: float = 3.6
    intra_ring_hop: float = 3.6
    ring_radius: float | None = None

    def __post_init__(self):
        if int(self.n_sites_per_ring) != self.n_sites_per_ring or self.n_sites_per_ring < 3:
            raise DomainError(f"need an integer N >= 3, got {self.n_sites_per_ring!r}")
        if not self.atom_radius > 0:
            raise DomainError("atom radius W must be positive")
        if not self.inter_ring_hop > 0 or not self.intra_ring_hop > 0:
            raise DomainError("hopping integrals V and xi must be positive")
        if self.ring_radius is None:
            object.__setattr__(
                self, "ring_radius", self.n_sites_per_ring * self.atom_radius / math.pi
            )
        elif not self.ring_radius > 0:
            raise DomainError("ring radius R must be positive")

    @property
    def n(self) -> int:
        return self.n_sites_per_ring

    @property
    def delta(self) -> float:
        return 2.0 * math.pi / self.n_sites_per_ring

    def phi(self, j: int) -> float:
        return j * self.delta

    @property
    def m_values(self) -> range:
        """Canonical Brillouin zone, e.g. -5..6 for N = 12."""
        lo = (self.n - 1) // 2
        return range(-lo, self.n - lo)

    def wrap(self, m: int) -> int:
        lo = (self.n - 1) // 2
        return (m + lo) % self.n - lo

    def step(self, m_from: int, m_to: int) -> int:
        """Return +1 / -1 if the two momenta are neighbours (mod N), else 0."""
        d = (m_to - m_from) % self.n
        if d == 1:
            return 1
        if d == self.n - 1:
            return -1
        return 0


@dataclass(frozen=True, order=True)
class BandState:
    m: int
    sigma: Band

    def k(self, ring: MoebiusRing) -> float:
        return self.m * ring.delta

    def __str__(self):
        arrow = "up" if self.sigma is Band.UP else "down"
        return f"|{self.m}d,{arrow}>"


@dataclass(frozen=True)
class SpectrumEntry:
    state: BandState
    energy: float
    occupancy: int = 0


@dataclass(frozen=True)
class SitePosition:
    j: int
    subring: str
    position: np.ndarray = field(compare=False)


@dataclass(frozen=True)
class Transition:
    """An intra-band transition ``initial -> final`` (one momentum step)."""

    initial: BandState
    final: BandState
    n_i: int
    n_f: int
    frequency: float
    electric_strength: float
    magnetic_alpha: float
    step: int

    @property
    def band(self) -> Band:
        return self.initial.sigma

    @property
    def occupation_factor(self) -> float:
        return self.n_i / (self.n_f + 1)


def _check_state(ring: MoebiusRing, state: BandState) -> None:
    if state.m not in ring.m_values:
        raise DomainError(
            f"momentum index {state.m} outside zone "
            f"[{ring.m_values.start}, {ring.m_values.stop - 1}]"
        )


def band_energy(ring: MoebiusRing, state: BandState) -> float:
    _check_state(ring, state)
    # arguments on the integer grid of delta/2 keep mirror pairs bitwise equal
    h = ring.delta / 2.0
    v, xi = ring.inter_ring_hop, ring.intra_ring_hop
    if state.sigma is Band.UP:
        return v - 2.0 * xi * math.cos((2 * state.m - 1) * h)
    return -v - 2.0 * xi * math.cos(2 * state.m * h)


def build_spectrum(ring: MoebiusRing) -> list[SpectrumEntry]:
    """All 2N band states (up band first), occupancies zeroed."""
    return [
        SpectrumEntry(BandState(m, sigma), band_energy(ring, BandState(m, sigma)))
        for sigma in (Band.UP, Band.DOWN)
        for m in ring.m_values
    ]


def _filling_key(entry: SpectrumEntry):
    s = entry.state
    return (entry.energy, abs(s.m), s.m < 0, s.sigma is Band.UP)


def _multiplets(entries: Sequence[SpectrumEntry]) -> Iterable[list[SpectrumEntry]]:
    group: list[SpectrumEntry] = []
    for e in entries:
        if group and e.energy - group[0].energy > DEGENERACY_TOL:
            yield group
            group = []
        group.append(e)
    if group:
        yield group


def fill_electrons(spectrum: Sequence[SpectrumEntry], n_electrons: int | None = None) -> list[SpectrumEntry]:
    """Aufbau filling, two electrons per orbital.

    A degenerate multiplet that cannot be completely filled receives one
    electron per orbital first; leftover electrons then pair up in filling
    order. The result keeps the order of ``spectrum``.
    """
    capacity = 2 * len(spectrum)
    if n_electrons is None:
        n_electrons = len(spectrum)
    if not 0 <= n_electrons <= capacity:
        raise DomainError(f"n_electrons must lie in [0, {capacity}], got {n_electrons}")

    occupancy: dict[BandState, int] = {}
    remaining = n_electrons
    for multiplet in _multiplets(sorted(spectrum, key=_filling_key)):
        size = len(multiplet)
        if remaining >= 2 * size:
            for e in multiplet:
                occupancy[e.state] = 2
            remaining -= 2 * size
            continue
        singles = min(remaining, size)
        doubles = remaining - singles
        for i, e in enumerate(multiplet):
            occupancy[e.state] = (1 if i < singles else 0) + (1 if i < doubles else 0)
        remaining = 0

    return [replace(e, occupancy=occupancy.get(e.state, 0)) for e in spectrum]


def electric_matrix_element(ring: MoebiusRing, initial: BandState, final: BandState) -> np.ndarray:
    """Intra-band coupling vector ``g`` with ``<i|H_E|f> = g . E`` (units of e nm).

    For a momentum step of +1 (-1) this is ``R/2 (1, -i, 0)`` (``R/2 (1, +i, 0)``);
    every other intra-band pair is uncoupled.
    """
    if initial.sigma is not final.sigma:
        raise DomainError("only intra-band electric dipole elements are available")
    _check_state(ring, initial)
    _check_state(ring, final)
    step = ring.step(initial.m, final.m)
    half_r = ring.ring_radius / 2.0
    if step == 0:
        return np.zeros(3, dtype=complex)
    return half_r * np.array([1.0, -1j * step, 0.0])


def magnetic_alpha(ring: MoebiusRing, initial: BandState, final: BandState) -> float:
    """Dimensionless magnetic coupling alpha for a one-step intra-band transition."""
    if initial.sigma is not final.sigma:
        raise DomainError("magnetic coupling is defined here only within one band")
    step = ring.step(initial.m, final.m)
    if step == 0:
        raise DomainError(f"momentum step {initial.m} -> {final.m} is not +-1")
    # brackets in units of delta/2, relative to 2m: cos(k + a) - cos(k + b)
    offsets = {
        (Band.UP, 1): (-2, 2),
        (Band.UP, -1): (-4, 0),
        (Band.DOWN, 1): (-1, 3),
        (Band.DOWN, -1): (-3, 1),
    }
    a, b = offsets[initial.sigma, step]
    h = ring.delta / 2.0
    two_m = 2 * initial.m
    bracket = math.cos((two_m + a) * h) - math.cos((two_m + b) * h)
    w, r = ring.atom_radius, ring.ring_radius
    return w * w * ring.intra_ring_hop / (4.0 * HBAR_C_EV_NM * r) * bracket


def allowed_transitions(ring: MoebiusRing, spectrum: Sequence[SpectrumEntry]) -> list[Transition]:
    """One-step intra-band transitions from a non-empty to a not-full state.

    Only upward (positive frequency) transitions are kept. Sorted by
    frequency, then by band and initial momentum.
    """
    by_state = {e.state: e for e in spectrum}
    out = []
    for e in spectrum:
        if e.occupancy < 1:
            continue
        for step in (1, -1):
            target = BandState(ring.wrap(e.state.m + step), e.state.sigma)
            f = by_state[target]
            if f.occupancy > 1:
                continue
            freq = f.energy - e.energy
            if freq <= 0:
                continue
            out.append(
                Transition(
                    initial=e.state,
                    final=target,
                    n_i=e.occupancy,
                    n_f=f.occupancy,
                    frequency=freq,
                    electric_strength=ring.ring_radius / 2.0,
                    magnetic_alpha=magnetic_alpha(ring, e.state, target),
                    step=step,
                )
            )
    out.sort(key=lambda t: (t.frequency, t.band.value, t.initial.m))
    return out


def degenerate_groups(transitions: Sequence[Transition], tol: float = DEGENERACY_TOL) -> list[list[Transition]]:
    """Group transitions of (numerically) equal frequency, in ascending order."""
    groups: list[list[Transition]] = []
    for t in sorted(transitions, key=lambda t: t.frequency):
        if groups and t.frequency - groups[-1][0].frequency <= tol:
            groups[-1].append(t)
        else:
            groups.append([t])
    return groups


def ground_state(ring: MoebiusRing, n_electrons: int | None = None) -> tuple[list[SpectrumEntry], list[Transition]]:
    """Filled spectrum and its allowed transitions (default: 2N electrons)."""
    spectrum = fill_electrons(build_spectrum(ring), n_electrons)
    return spectrum, allowed_transitions(ring, spectrum)


# -- site-basis oracle -------------------------------------------------------


@dataclass(frozen=True)
class SiteBasisModel:
    """Dense 2N x 2N Hamiltonian in the order (a_0..a_{N-1}, b_0..b_{N-1})."""

    n: int
    hamiltonian: np.ndarray = field(compare=False)

    @property
    def dimension(self) -> int:
        return 2 * self.n

    @classmethod
    def build(cls, n: int, v: float, xi: float) -> "SiteBasisModel":
        if n < 3:
            raise DomainError("need N >= 3")
        h = np.zeros((2 * n, 2 * n))

        def hop(p, q, t):
            h[p, q] -= t
            h[q, p] -= t

        for j in range(n):
            hop(j, n + j, v)
        for j in range(n - 1):
            hop(j, j + 1, xi)
            hop(n + j, n + j + 1, xi)
        # twisted closure: a_N = b_0, b_N = a_0
        hop(n - 1, n, xi)
        hop(2 * n - 1, 0, xi)
        return cls(n, h)

    @classmethod
    def from_ring(cls, ring: MoebiusRing) -> "SiteBasisModel":
        return cls.build(ring.n, ring.inter_ring_hop, ring.intra_ring_hop)

    def translation(self) -> np.ndarray:
        """Twisted translation a_j -> a_{j+1}, b_j -> b_{j+1} with a_N = b_0, b_N = a_0."""
        n = self.n
        t = np.zeros((2 * n, 2 * n))
        for j in range(n):
            t[(j + 1) if j < n - 1 else n, j] = 1.0
            t[(n + j + 1) if j < n - 1 else 0, n + j] = 1.0
        return t


def site_oracle_spectrum(model: SiteBasisModel) -> np.ndarray:
    return np.linalg.eigvalsh(model.hamiltonian)


def site_oracle_states(model: SiteBasisModel) -> dict[BandState, tuple[float, np.ndarray]]:
    """Numerically diagonalize and label each eigenvector by (m, band).

    Degenerate eigenspaces are split with the twisted translation, which
    commutes with the Hamiltonian and has 2N distinct eigenvalues
    ``exp(i k)`` (down band) and ``exp(i (k - delta/2))`` (up band).
    """
    n = model.n
    delta = 2.0 * math.pi / n
    lo = (n - 1) // 2
    evals, evecs = np.linalg.eigh(model.hamiltonian)
    tmat = model.translation()
    tol = 1e-8 * max(1.0, float(np.max(np.abs(evals))))

    clusters: list[list[int]] = []
    for i, e in enumerate(evals):
        if clusters and e - evals[clusters[-1][-1]] <= tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])

    labelled: dict[BandState, tuple[float, np.ndarray]] = {}
    for cols in clusters:
        basis = evecs[:, cols].astype(complex)
        lam, u = np.linalg.eig(basis.conj().T @ tmat @ basis)
        vecs = basis @ u
        for c, theta in enumerate(np.angle(lam)):
            t = theta / delta
            if abs(t - round(t)) < 0.25:
                state = BandState((round(t) + lo) % n - lo, Band.DOWN)
            else:
                state = BandState((round(t + 0.5) + lo) % n - lo, Band.UP)
            vec = vecs[:, c] / np.linalg.norm(vecs[:, c])
            labelled[state] = (float(np.mean(evals[cols])), vec)
    if len(labelled) != 2 * n:
        raise RuntimeError("translation eigenvalues failed to label every state")
    return labelled


def site_positions(ring: MoebiusRing) -> list[SitePosition]:
    """Nuclear positions, sub-ring a first (+ sign) then b (- sign)."""
    out = []
    r, w = ring.ring_radius, ring.atom_radius
    for sign, label in ((1.0, "a"), (-1.0, "b")):
        for j in range(ring.n):
            phi = ring.phi(j)
            rho = r + sign * w * math.sin(phi / 2.0)
            pos = np.array([rho * math.cos(phi), rho * math.sin(phi), sign * w * math.cos(phi / 2.0)])
            out.append(SitePosition(j, label, pos))
    return out


def oracle_dipole(ring: MoebiusRing, bra: np.ndarray, ket: np.ndarray) -> np.ndarray:
    """<bra| r |ket> with r diagonal in the site basis (units of nm, i.e. e nm per e)."""
    positions = np.array([p.position for p in site_positions(ring)])
    return (bra.conj() * ket) @ positions
