"""Physical constants and unit conversions.

Everything internal is Gaussian-CGS (cm, g, s, statvolt/cm, erg).
User-facing quantities (W/cm^2, um, ps, cm^-3) are converted exactly once,
here or in the parameter containers that call into here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

WATT_PER_CM2_TO_CGS = 1.0e7       # 1 W = 1e7 erg/s
ERG_PER_KEV = 1.602176634e-9
CM_PER_UM = 1.0e-4
S_PER_PS = 1.0e-12


@dataclass(frozen=True)
class PhysicalConstants:
    """Gaussian-CGS constants (CODATA 2018)."""

    c: float = 2.99792458e10          # speed of light, cm/s
    e: float = 4.80320471e-10         # elementary charge, statC
    m_e: float = 9.1093837015e-28     # electron mass, g
    hbar: float = 1.054571817e-27     # reduced Planck constant, erg s

    def __post_init__(self):
        for name in ("c", "e", "m_e", "hbar"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"constant {name} must be positive")


CONST = PhysicalConstants()


def intensity_to_field(intensity_w_cm2, const=CONST):
    """Peak field E0 (statvolt/cm) of a wave carrying I (W/cm^2), I = c E0^2 / 8 pi."""
    if intensity_w_cm2 < 0.0:
        raise ValueError("intensity must be non-negative")
    return np.sqrt(8.0 * np.pi * intensity_w_cm2 * WATT_PER_CM2_TO_CGS / const.c)


def field_to_intensity(field_statvolt_cm, const=CONST):
    """Intensity (W/cm^2) carried by a wave with peak field E0 (statvolt/cm)."""
    if field_statvolt_cm < 0.0:
        raise ValueError("field must be non-negative")
    return const.c * field_statvolt_cm**2 / (8.0 * np.pi) / WATT_PER_CM2_TO_CGS


def field_to_energy_density(field_statvolt_cm):
    """Cycle-peak field energy density E^2 / 8 pi (erg/cm^3)."""
    return field_statvolt_cm**2 / (8.0 * np.pi)


def wavelength_to_omega(wavelength_cm, const=CONST):
    """Angular frequency (rad/s) and wavenumber (1/cm) for a vacuum wavelength (cm)."""
    if wavelength_cm <= 0.0:
        raise ValueError("wavelength must be positive")
    k = 2.0 * np.pi / wavelength_cm
    return const.c * k, k


def omega_to_wavelength(omega_rad_s, const=CONST):
    """Vacuum wavelength (cm) for an angular frequency (rad/s)."""
    if omega_rad_s <= 0.0:
        raise ValueError("omega must be positive")
    return 2.0 * np.pi * const.c / omega_rad_s


def beam_plasma_frequency(density_cm3, const=CONST):
    """Plasma angular frequency (rad/s) of an electron population of given density (cm^-3)."""
    if density_cm3 < 0.0:
        raise ValueError("density must be non-negative")
    return np.sqrt(4.0 * np.pi * density_cm3 * const.e**2 / const.m_e)


def photon_energy_kev(omega_rad_s, const=CONST):
    """Photon energy (keV) at angular frequency omega (rad/s)."""
    return const.hbar * omega_rad_s / ERG_PER_KEV
