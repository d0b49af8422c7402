"""Beam, pump-laser, and radiated-wave parameter containers.

The geometry throughout: an electron beam moves in +z, the pump laser
counter-propagates in -z with phase (k0 z + c k0 t), and the radiated wave
co-propagates with the beam in +z with phase (k_g z - c k_g t).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constants import CONST, CM_PER_UM, S_PER_PS, intensity_to_field, photon_energy_kev, wavelength_to_omega

# Slope lookups farther than this many sigmas from resonance fall back to the
# maximum-slope point of the gaussian.
SLOPE_WINDOW_SIGMAS = 8.0


@dataclass(frozen=True)
class LaserParams:
    """Counter-propagating pump laser, stored in CGS plus the W/cm^2 flux."""

    wavelength: float        # cm
    intensity_w_cm2: float   # W/cm^2, flux convention I = c E0^2 / 8 pi
    duration: float          # s

    def __post_init__(self):
        if self.wavelength <= 0.0:
            raise ValueError("wavelength must be positive")
        if self.intensity_w_cm2 < 0.0:
            raise ValueError("intensity must be non-negative")
        if self.duration <= 0.0:
            raise ValueError("duration must be positive")

    @classmethod
    def from_lab_units(cls, wavelength_um, intensity_w_cm2, duration_ps):
        return cls(wavelength_um * CM_PER_UM, intensity_w_cm2, duration_ps * S_PER_PS)

    @property
    def omega0(self):
        return wavelength_to_omega(self.wavelength)[0]

    @property
    def k0(self):
        return wavelength_to_omega(self.wavelength)[1]

    @property
    def field(self):
        """Peak field E0 (statvolt/cm)."""
        return intensity_to_field(self.intensity_w_cm2)

    @property
    def a0(self):
        """Normalized vector potential e E0 / (m_e c^2 k0), equal to V_x / c."""
        return CONST.e * self.field / (CONST.m_e * CONST.c**2 * self.k0)

    @property
    def i18(self):
        """Intensity in units of 1e18 W/cm^2."""
        return self.intensity_w_cm2 / 1.0e18

    @property
    def omega_tau(self):
        return self.omega0 * self.duration


@dataclass(frozen=True)
class BeamParams:
    """Relativistic electron beam with a gaussian longitudinal velocity spread."""

    gamma0: float       # mean Lorentz factor, > 1
    density: float      # beam electron density, cm^-3
    spread: float       # fractional energy spread zeta; delta_v = c zeta / gamma0^2

    def __post_init__(self):
        if self.gamma0 <= 1.0:
            raise ValueError("gamma0 must exceed 1")
        if self.density < 0.0:
            raise ValueError("density must be non-negative")
        if self.spread < 0.0:
            raise ValueError("spread must be non-negative")

    @property
    def beta(self):
        return float(np.sqrt(1.0 - 1.0 / self.gamma0**2))

    @property
    def v0(self):
        """Mean longitudinal velocity (cm/s)."""
        return CONST.c * self.beta

    @property
    def delta_v(self):
        """Velocity spread (cm/s) implied by the fractional energy spread."""
        return CONST.c * self.spread / self.gamma0**2

    @property
    def n20(self):
        """Density in units of 1e20 cm^-3."""
        return self.density / 1.0e20


def quiver_velocity(laser, beam):
    """Transverse quiver amplitudes (V_x, 2 V_x / gamma0), both in cm/s.

    V_x = e E0 / (m_e c k0) is the drive scale; 2 V_x / gamma0 is the
    first-order amplitude the design formulas use for the beam electrons.
    The directly integrated equation of motion gives a somewhat smaller
    amplitude, see lufel.ensemble.quiver_amplitude_prediction.
    """
    v_x = CONST.e * laser.field / (CONST.m_e * CONST.c * laser.k0)
    return v_x, 2.0 * v_x / beam.gamma0


def coupling_kappa(laser, beam):
    """Dimensionless pendulum coupling 1 / (gamma0^2 (gamma0^2 beta^2 + 1)) * (V_x / c)."""
    denom = beam.gamma0**2 * (beam.gamma0**2 * beam.beta**2 + 1.0)
    return laser.a0 / denom


def kappa_sq_paper(laser, beam):
    """Order-of-magnitude coupling squared, I18 / (2.5 gamma0^4)."""
    return laser.i18 / (2.5 * beam.gamma0**4)


def kappa_eq_orbit_literal(laser, beam):
    """Coupling read off the orbit-substitution form before the beat product is
    taken; exceeds coupling_kappa by exactly gamma0. Kept as a diagnostic."""
    denom = beam.gamma0 * (beam.gamma0**2 * beam.beta**2 + 1.0)
    return laser.a0 / denom


@dataclass(frozen=True)
class RadiationWave:
    """Co-propagating radiated wave, plus the pump it beats against."""

    k_g: float          # radiated wavenumber, 1/cm
    k0: float           # pump wavenumber, 1/cm
    field: float = 0.0  # current radiated field amplitude, statvolt/cm

    def __post_init__(self):
        if self.k_g <= 0.0 or self.k0 <= 0.0:
            raise ValueError("wavenumbers must be positive")
        if self.field < 0.0:
            raise ValueError("field must be non-negative")

    @property
    def omega_g(self):
        return CONST.c * self.k_g

    @property
    def wavelength_g(self):
        return 2.0 * np.pi / self.k_g

    @property
    def q(self):
        """Beat wavenumber k0 + k_g (1/cm)."""
        return self.k0 + self.k_g

    @property
    def beat_omega(self):
        """Beat frequency c (k_g - k0) (rad/s)."""
        return CONST.c * (self.k_g - self.k0)

    @property
    def v_res(self):
        """Velocity at which the beat phase is stationary, beat_omega / q (cm/s)."""
        return self.beat_omega / self.q

    @property
    def photon_kev(self):
        return photon_energy_kev(self.omega_g)

    def alpha(self, v):
        """Beat-phase rate q v - beat_omega (rad/s) for longitudinal velocity v."""
        return self.q * v - self.beat_omega

    def with_field(self, field):
        return RadiationWave(self.k_g, self.k0, field)


def resonant_radiation(laser, beam, mode="exact", field=0.0):
    """Radiated wave at the upshifted resonance.

    mode 'exact' uses k_g = 2 k0 / (1 - beta); mode 'approx' uses the
    large-gamma0 limit k_g = 4 gamma0^2 k0. The two agree within
    (1 - beta) / 2, under 0.5% for gamma0 >= 10.
    """
    if mode == "exact":
        k_g = 2.0 * laser.k0 / (1.0 - beam.beta)
    elif mode == "approx":
        k_g = 4.0 * beam.gamma0**2 * laser.k0
    else:
        raise ValueError(f"unknown resonance mode {mode!r}")
    return RadiationWave(k_g, laser.k0, field)


def wave_for_resonance_velocity(laser, v_res, field=0.0):
    """Radiated wave whose beat phase is stationary at velocity v_res (cm/s)."""
    if not (0.0 <= v_res < CONST.c):
        raise ValueError("v_res must lie in [0, c)")
    k_g = laser.k0 * (CONST.c + v_res) / (CONST.c - v_res)
    return RadiationWave(k_g, laser.k0, field)


@dataclass(frozen=True)
class VelocityDistribution:
    """Gaussian longitudinal velocity distribution of the beam electrons."""

    mean: float     # cm/s
    sigma: float    # cm/s

    def __post_init__(self):
        if self.sigma <= 0.0:
            raise ValueError("sigma must be positive")

    @classmethod
    def from_beam(cls, beam):
        return cls(beam.v0, beam.delta_v)

    def pdf(self, v):
        z = (np.asarray(v, dtype=float) - self.mean) / self.sigma
        return np.exp(-0.5 * z * z) / (np.sqrt(2.0 * np.pi) * self.sigma)

    def slope(self, v):
        """d f / d v (s^2/cm^2) at velocity v."""
        z = (np.asarray(v, dtype=float) - self.mean) / self.sigma
        return -z / self.sigma * self.pdf(v)

    def max_abs_slope(self):
        """Largest |d f / d v|, attained one sigma from the mean."""
        return 1.0 / (np.sqrt(2.0 * np.pi * np.e) * self.sigma**2)

    def sample(self, count, seed):
        """Draw iid velocities, reproducible for a given seed."""
        rng = np.random.default_rng(seed)
        return rng.normal(self.mean, self.sigma, int(count))

    def quantile_samples(self, count):
        """Deterministic inverse-CDF samples at midpoint quantiles, sorted."""
        from scipy.special import ndtri

        u = (np.arange(int(count)) + 0.5) / int(count)
        return self.mean + self.sigma * ndtri(u)


def slope_paper(beam):
    """Order-of-magnitude slope gamma0^4 / (zeta^2 c^2) (s^2/cm^2), sign positive."""
    if beam.spread <= 0.0:
        raise ValueError("spread must be positive for the crude slope")
    return beam.gamma0**4 / (beam.spread**2 * CONST.c**2)


def slope_at_resonance(dist, v_res):
    """Distribution slope used by the gain formulas.

    Evaluated at v_res while the resonance sits within SLOPE_WINDOW_SIGMAS of
    the mean; otherwise at the maximum-slope point mean + sigma, so that far
    detunings still produce the order-of-magnitude slope rather than an
    exponentially small one.
    """
    offset = v_res - dist.mean
    if abs(offset) > SLOPE_WINDOW_SIGMAS * dist.sigma:
        return float(dist.slope(dist.mean + dist.sigma))
    return float(dist.slope(v_res))
