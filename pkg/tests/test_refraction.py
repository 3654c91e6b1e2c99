import math

import numpy as np
import pytest

from moebius_optics.constants import HBAR_C_EV_NM
from moebius_optics.errors import DomainError, SingularResponseError
from moebius_optics.refraction import (
    IncidentWave,
    Polarization,
    classify,
    dispersion_residual,
    e_pol_bandwidth,
    h_pol_bandwidth,
    negative_bandwidth,
    poynting_e,
    poynting_h,
    s_tz_zero_crossings,
    solve_transverse_k,
)
from moebius_optics.response import (
    PermeabilityTensor,
    PermittivityTensor,
    ResponseParams,
    epsilon_tensor,
    mu_tensor,
    negative_permittivity_window,
)


def vacuum(omega):
    return PermittivityTensor(omega, np.eye(3, dtype=complex), 0.0), PermeabilityTensor(omega, np.eye(3, dtype=complex), 0.0, 0.0)


def diag_eps(omega, exx, ezz=1.0):
    return PermittivityTensor(omega, np.diag([exx, exx, ezz]).astype(complex), 1 - exx)


@pytest.fixture(scope="module")
def window(params):
    return negative_permittivity_window(params)


@pytest.mark.parametrize("theta", [0.0, 10.0, 30.0, 60.0, 89.0])
def test_isotropic_limit(theta):
    omega = 2.5
    eps, mu = vacuum(omega)
    k0 = omega / HBAR_C_EV_NM
    k_ty = solve_transverse_k(omega, theta, eps, mu)
    assert k_ty == pytest.approx(-k0 * math.cos(math.radians(theta)), rel=1e-12, abs=1e-15)
    k_tz = IncidentWave(Polarization.H, omega, theta).k_iz
    assert k_tz / math.hypot(k_ty, k_tz) == pytest.approx(math.sin(math.radians(theta)), abs=1e-12)


def test_normal_incidence_uses_eps_z_mu_xx():
    omega = 3.0
    eps = diag_eps(omega, 0.4, 1.0)
    mu = PermeabilityTensor(omega, np.diag([0.81, 1.0, 1.0]).astype(complex), 0.0, 0.0)
    assert solve_transverse_k(omega, 0.0, eps, mu) == pytest.approx(-(omega / HBAR_C_EV_NM) * 0.9, rel=1e-14)


def test_hyperbolic_medium_propagates_at_every_angle():
    omega = 2.7
    eps = diag_eps(omega, -1.5)
    _, mu = vacuum(omega)
    for theta in np.linspace(0, 89, 30):
        k_ty = solve_transverse_k(omega, float(theta), eps, mu)
        assert k_ty is not None and k_ty < 0


def test_evanescent_when_radicand_negative():
    omega = 2.0
    eps = diag_eps(omega, 0.2)
    _, mu = vacuum(omega)
    assert solve_transverse_k(omega, 60.0, eps, mu) is None


def test_singular_media():
    omega = 2.0
    _, mu = vacuum(omega)
    with pytest.raises(SingularResponseError):
        solve_transverse_k(omega, 30.0, diag_eps(omega, 0.0), mu)
    with pytest.raises(SingularResponseError):
        poynting_h(-1.0, 1.0, diag_eps(omega, 0.0), omega)
    zero_mu1 = PermeabilityTensor(omega, np.array([[1, 0, 0], [0, 0.5, 0.5], [0, 0.5, 0.5]], dtype=complex), 0.5, 0.0)
    with pytest.raises(SingularResponseError):
        poynting_e(-1.0, 1.0, zero_mu1, omega)


def test_incident_wave_validation():
    with pytest.raises(DomainError):
        IncidentWave(Polarization.H, 2.0, 90.0)
    with pytest.raises(DomainError):
        IncidentWave(Polarization.H, 2.0, -1.0)
    with pytest.raises(DomainError):
        IncidentWave(Polarization.E, 0.0, 10.0)


def test_h_flux_sign_follows_eps_y():
    omega = 2.7
    s_ty, s_tz = poynting_h(-1.0, 0.5, diag_eps(omega, -0.8), omega)
    assert s_ty < 0 and s_tz < 0
    s_ty, s_tz = poynting_h(-1.0, 0.5, diag_eps(omega, 0.8), omega)
    assert s_ty < 0 and s_tz > 0


def test_e_flux_beta_zero_is_parallel_to_k():
    omega = 2.0
    _, mu = vacuum(omega)
    s_ty, s_tz = poynting_e(-0.7, 0.3, mu, omega)
    assert s_ty == pytest.approx(-0.7 / (2 * omega)) and s_tz == pytest.approx(0.3 / (2 * omega))


def test_classify_examples(params):
    assert classify(2.70, 30.0, "H", params).classification == "negative"
    assert classify(2.0, 30.0, "H", params).classification == "positive"
    h = classify(2.70, 0.0, "H", params)
    assert h.classification == "positive" and h.s_tz == 0.0
    # the off-diagonal mu_yz tilts the E-polarized flux slightly even at normal incidence
    e = classify(2.70, 0.0, "E", params)
    assert e.classification == "positive"
    assert abs(e.s_tz) < 1e-5 * abs(e.s_ty)


def test_in_window_is_always_propagating(params, window):
    for x in np.linspace(window.detuning_low, window.detuning_high, 25)[1:-1]:
        for theta in (0.0, 20.0, 45.0, 85.0):
            sol = classify(window.reference, theta, "H", params, offset=float(x))
            assert sol.propagating
            assert sol.s_ty < 0


def test_polarizations_share_k(params):
    for w in (2.0, 2.7, 2.9, 3.1):
        for theta in (5.0, 40.0):
            h = classify(w, theta, "H", params)
            e = classify(w, theta, "E", params)
            assert h.k_ty == e.k_ty and h.k_tz == e.k_tz


def test_tangential_continuity(params):
    for theta in (0.0, 17.0, 70.0):
        sol = classify(2.7, theta, "E", params)
        assert sol.k_tz == IncidentWave(Polarization.E, 2.7, theta).k_iz


def test_residual_of_returned_solutions(params):
    for w in (1.5, 2.64, 2.7, 2.95, 3.3):
        eps, mu = epsilon_tensor(w, params), mu_tensor(w, params)
        for theta in (0.0, 30.0, 80.0):
            sol = classify(w, theta, "H", params)
            if sol.propagating:
                assert dispersion_residual(w, sol.k_ty, sol.k_tz, eps, mu) < 1e-12


def test_h_bandwidth_is_whole_window(params, window):
    for theta in (10.0, 45.0):
        assert h_pol_bandwidth(theta, params) == pytest.approx(window.bandwidth, rel=1e-9)


def test_e_bandwidth_narrows_with_angle(params):
    widths = [e_pol_bandwidth(t, params) for t in (1.0, 2.0, 5.0, 8.0, 15.0, 45.0)]
    assert all(a >= b for a, b in zip(widths, widths[1:]))
    assert widths[0] > 0
    assert widths[0] == max(widths)
    assert widths[-1] == 0.0
    assert widths[0] < h_pol_bandwidth(1.0, params)


def test_bandwidth_rejects_normal_incidence(params):
    with pytest.raises(DomainError):
        negative_bandwidth(0.0, "E", params)


def test_no_window_means_no_bandwidth():
    assert h_pol_bandwidth(30.0, ResponseParams(gamma=100.0)) == 0.0


def test_e_pol_crossings_bound_negative_region(params, window):
    theta = 2.0
    detunings = np.geomspace(1e-12, 1e-4, 600)
    crossings = s_tz_zero_crossings(theta, "E", params, window.reference, detunings)
    assert len(crossings) == 2
    a, b = crossings
    assert b - a == pytest.approx(e_pol_bandwidth(theta, params), rel=1e-6)
    mid = 0.5 * (a + b)
    assert classify(window.reference, theta, "E", params, offset=mid).classification == "negative"
