"""Physical constants in the eV / nm unit system used throughout the package."""

HBAR_C_EV_NM = 197.3269804
"""hbar * c in eV nm."""

COULOMB_EV_NM = 1.4399645
"""e^2 / (4 pi eps0) in eV nm."""

HBAR_EV_S = 6.582119569e-16
"""hbar in eV s."""
