import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from moebius_optics.constants import HBAR_C_EV_NM
from moebius_optics.refraction import IncidentWave, Polarization, classify, dispersion_residual, solve_transverse_k
from moebius_optics.response import ResponseParams, epsilon_tensor, eta_prime, mu_tensor
from moebius_optics.ring_model import (
    Band,
    BandState,
    MoebiusRing,
    SiteBasisModel,
    band_energy,
    build_spectrum,
    fill_electrons,
    site_oracle_spectrum,
)
from tests.test_refraction import vacuum

PARAMS = ResponseParams()
hops = st.floats(min_value=0.05, max_value=10.0, allow_nan=False)
rings = st.builds(MoebiusRing, n_sites_per_ring=st.integers(4, 16), inter_ring_hop=hops, intra_ring_hop=hops)
photon = st.floats(min_value=0.5, max_value=5.0)
angles = st.floats(min_value=0.0, max_value=89.0)


@settings(max_examples=40, deadline=None)
@given(rings)
def test_site_basis_matches_bands(ring):
    analytic = np.sort([e.energy for e in build_spectrum(ring)])
    np.testing.assert_allclose(site_oracle_spectrum(SiteBasisModel.from_ring(ring)), analytic, atol=1e-10, rtol=0)


@given(rings, st.data())
def test_filling_conserves_electrons(ring, data):
    n_e = data.draw(st.integers(0, 4 * ring.n))
    filled = fill_electrons(build_spectrum(ring), n_e)
    assert sum(e.occupancy for e in filled) == n_e
    occupied = [e.energy for e in filled if e.occupancy]
    empty = [e.energy for e in filled if e.occupancy == 0]
    if occupied and empty:
        assert max(occupied) <= min(empty) + 1e-9


@given(rings)
def test_band_mirror_symmetry(ring):
    top = ring.m_values[-1]
    bottom = ring.m_values[0]
    for m in ring.m_values:
        if bottom <= -m <= top:
            assert band_energy(ring, BandState(m, Band.DOWN)) == band_energy(ring, BandState(-m, Band.DOWN))
        if bottom <= 1 - m <= top:
            assert band_energy(ring, BandState(m, Band.UP)) == band_energy(ring, BandState(1 - m, Band.UP))


@given(photon, angles, st.sampled_from(["H", "E"]))
def test_returned_solutions_satisfy_dispersion(omega, theta, pol):
    sol = classify(omega, theta, pol, PARAMS)
    if sol.propagating:
        eps, mu = epsilon_tensor(omega, PARAMS), mu_tensor(omega, PARAMS)
        assert dispersion_residual(omega, sol.k_ty, sol.k_tz, eps, mu) < 1e-12
        assert sol.s_ty < 0
    assert sol.k_tz == IncidentWave(Polarization(pol), omega, theta).k_iz


@given(photon, angles)
def test_snell_in_isotropic_limit(omega, theta):
    eps, mu = vacuum(omega)
    k_ty = solve_transverse_k(omega, theta, eps, mu)
    k_tz = omega / HBAR_C_EV_NM * math.sin(math.radians(theta))
    assert abs(k_tz / math.hypot(k_ty, k_tz) - math.sin(math.radians(theta))) < 1e-12


@given(photon)
def test_antisymmetric_parts_cancel(omega):
    assert mu_tensor(omega, PARAMS).beta1 == 0.0
    assert abs(epsilon_tensor(omega, PARAMS).components[0, 1]) < 1e-15


@given(st.floats(min_value=1e-12, max_value=1.0))
def test_single_term_parity(x):
    t = PARAMS.transitions[0]
    assert eta_prime(t, t.frequency, PARAMS, offset=x) == -eta_prime(t, t.frequency, PARAMS, offset=-x)
