"""Optical response of Moebius-ring molecules and hyperbolic negative refraction."""
from .errors import DomainError, SingularResponseError
from .refraction import (
    IncidentWave,
    Polarization,
    RefractionSolution,
    classify,
    e_pol_bandwidth,
    h_pol_bandwidth,
    poynting_e,
    poynting_h,
    solve_transverse_k,
)
from .response import (
    PermeabilityTensor,
    PermittivityTensor,
    PermittivityWindow,
    ResponseParams,
    coupling_constant,
    epsilon_tensor,
    eta_prime,
    eta_prime_total,
    mu_tensor,
    negative_permittivity_window,
)
from .ring_model import (
    Band,
    BandState,
    MoebiusRing,
    SiteBasisModel,
    SpectrumEntry,
    Transition,
    allowed_transitions,
    band_energy,
    build_spectrum,
    electric_matrix_element,
    fill_electrons,
    magnetic_alpha,
    site_oracle_spectrum,
)

__version__ = "0.1.0"
