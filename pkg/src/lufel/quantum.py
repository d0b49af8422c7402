"""Quantum diffraction and intensity-noise limits in the beam frame.

In the frame moving with the beam the pump appears frequency-upshifted and
acts for a shortened time T = tau / gamma0.  Two thresholds follow: the
Lorentz factor above which the photon recoil resolves the interaction
bandwidth (diffraction_threshold), and the intensity-noise ceiling above
which the band gap opened by the noise suppresses the diffraction
(critical_intensity).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import CONST, WATT_PER_CM2_TO_CGS, field_to_energy_density
from .gain import normalized_gain


@dataclass(frozen=True)
class FrameBoost:
    """Pump-laser quantities seen in the beam frame."""

    omega_m: float   # rad/s
    k_m: float       # 1/cm
    field_m: float   # statvolt/cm
    duration_m: float  # s, interaction time T = tau / gamma0


def boost_to_beam_frame(laser, beam, mode="paper"):
    """Boost the pump into the beam frame.

    mode 'paper' uses the large-gamma0 doubling factor 2 gamma0; mode 'exact'
    uses gamma0 (1 + beta).  They agree within (1 + beta) / 2.
    """
    if mode == "paper":
        factor = 2.0 * beam.gamma0
    elif mode == "exact":
        factor = beam.gamma0 * (1.0 + beam.beta)
    else:
        raise ValueError(f"unknown boost mode {mode!r}")
    return FrameBoost(
        omega_m=factor * laser.omega0,
        k_m=factor * laser.k0,
        field_m=factor * laser.field,
        duration_m=laser.duration / beam.gamma0,
    )


def diffraction_threshold(laser):
    """Minimum gamma0 for which the photon recoil hbar k_m^2 / m_e exceeds the
    inverse interaction time gamma0 / tau; equals m_e / (4 hbar k0^2 tau)."""
    return CONST.m_e / (4.0 * CONST.hbar * laser.k0**2 * laser.duration)


def oscillation_velocity(boost):
    """Beam-frame quiver velocity e E_m / (m_e omega_m) (cm/s)."""
    return CONST.e * boost.field_m / (CONST.m_e * boost.omega_m)


def band_gap(field_m, field_noise_m, omega_m):
    """Band gap (rad/s) opened by an intensity noise field_noise_m on top of a
    pump field_m, both beam-frame amplitudes at beam-frame frequency omega_m.
    """
    if field_noise_m < 0.0 or field_m < 0.0:
        raise ValueError("fields must be non-negative")
    v_osc = CONST.e * field_m / (CONST.m_e * omega_m)
    dv_osc = CONST.e * field_noise_m / (CONST.m_e * omega_m)
    return CONST.m_e / CONST.hbar * v_osc * dv_osc


def noise_field_bound(laser, beam, boost=None):
    """Largest lab-frame noise amplitude delta E_L (statvolt/cm) for which the
    band gap stays unresolved over the interaction time, band_gap * T = 1."""
    if boost is None:
        boost = boost_to_beam_frame(laser, beam, mode="paper")
    v_osc = oscillation_velocity(boost)
    if v_osc <= 0.0:
        raise ValueError("pump field must be positive")
    frame_factor = boost.omega_m / laser.omega0  # 2 gamma0 in the default mode
    dv_osc_max = CONST.hbar / (CONST.m_e * v_osc * boost.duration_m)
    field_noise_m_max = dv_osc_max * CONST.m_e * boost.omega_m / CONST.e
    return frame_factor * field_noise_m_max


@dataclass(frozen=True)
class QuantumLimits:
    """Limit summary for one design point."""

    gamma_min: float              # diffraction threshold on gamma0
    diffraction_relevant: bool    # gamma0 > gamma_min
    omega_m: float                # beam-frame pump frequency, rad/s
    k_m: float                    # beam-frame pump wavenumber, 1/cm
    field_m: float                # beam-frame pump field, statvolt/cm
    duration_m: float             # beam-frame interaction time, s
    band_gap: float               # rad/s, for the supplied noise field
    band_gap_suppressed: bool     # band_gap * duration_m > 1
    noise_field_max: float        # statvolt/cm, lab frame, at the ceiling
    i_c_flux_w_cm2: float         # noise-intensity ceiling, flux convention
    i_c_density_erg_cm3: float    # same ceiling as an energy density
    tau_g: float                  # radiated-pulse duration tau / gamma0^2, s
    max_energy_ratio: float       # I_C tau_g / (I tau), same convention both ways
    high_intensity_warning: bool  # I18 > 1, outside the stated validity range


def critical_intensity(laser, beam, boost_mode="paper"):
    """Noise-intensity ceiling in both intensity conventions.

    The ceiling is the noise field at which the band gap is just resolved,
    expressed as c dE^2/8pi (flux, W/cm^2) and as dE^2/8pi (energy density,
    erg/cm^3).  max_energy_ratio compares noise-pulse to pump-pulse energy,
    I_C tau_g / (I tau), and is the same number in either convention.
    """
    boost = boost_to_beam_frame(laser, beam, mode=boost_mode)
    de_l = noise_field_bound(laser, beam, boost)
    density = field_to_energy_density(de_l)
    flux_w = CONST.c * density / WATT_PER_CM2_TO_CGS
    tau_g = laser.duration / beam.gamma0**2
    ratio = (de_l / laser.field) ** 2 / beam.gamma0**2
    return de_l, flux_w, density, tau_g, ratio


def critical_intensity_quoted_form(laser, beam, convention="flux"):
    """The quoted closed form (gamma0^6 hbar^2 / (2 pi tau)^2) (m_e omega0^2 / e^2) / I.

    Dimensionally inconsistent with the derivation chain (it is short one
    factor of m_e omega0^2 / e^2); evaluated only so audits can report the
    divergence.  convention selects what is plugged in for I: 'flux' uses
    c E0^2 / 8 pi in erg/s/cm^2, 'paper' uses E0^2 / 8 pi in erg/cm^3.
    """
    if convention == "flux":
        i_val = laser.intensity_w_cm2 * WATT_PER_CM2_TO_CGS
    elif convention == "paper":
        i_val = field_to_energy_density(laser.field)
    else:
        raise ValueError(f"unknown intensity convention {convention!r}")
    if i_val <= 0.0:
        raise ValueError("intensity must be positive")
    return (
        beam.gamma0**6 * CONST.hbar**2 / ((2.0 * np.pi) ** 2 * laser.duration**2)
        * CONST.m_e * laser.omega0**2 / CONST.e**2
        / i_val
    )


def quantum_limits(laser, beam, noise_field=0.0, boost_mode="paper"):
    """Assemble the QuantumLimits summary for one design point."""
    boost = boost_to_beam_frame(laser, beam, mode=boost_mode)
    gamma_min = diffraction_threshold(laser)
    frame_factor = boost.omega_m / laser.omega0
    gap = band_gap(boost.field_m, noise_field / frame_factor, boost.omega_m)
    de_l, flux_w, density, tau_g, ratio = critical_intensity(laser, beam, boost_mode)
    return QuantumLimits(
        gamma_min=float(gamma_min),
        diffraction_relevant=bool(beam.gamma0 > gamma_min),
        omega_m=boost.omega_m,
        k_m=boost.k_m,
        field_m=boost.field_m,
        duration_m=boost.duration_m,
        band_gap=float(gap),
        band_gap_suppressed=bool(gap * boost.duration_m > 1.0),
        noise_field_max=float(de_l),
        i_c_flux_w_cm2=float(flux_w),
        i_c_density_erg_cm3=float(density),
        tau_g=float(tau_g),
        max_energy_ratio=float(ratio),
        high_intensity_warning=bool(laser.i18 > 1.0),
    )


def scaling_claims_check(laser, beam_template, gamma_grid, hold_gain_at=1.0):
    """Fitted gamma0 exponents of I_C and I_C tau_g along the constant-gain
    constraint (the design-formula gain held at hold_gain_at by adjusting the
    pump intensity), plus the unconstrained I_C exponent at fixed intensity.

    Returns a dict of (exponent, values) entries keyed by
    'i_c_constrained', 'i_c_tau_g_constrained', 'i_c_fixed_intensity'.
    """
    from .beam import BeamParams
    from .constants import intensity_to_field
    from .gain import fit_power_law

    gamma_grid = [float(g) for g in gamma_grid]
    if len(set(gamma_grid)) < 3:
        raise ValueError("gamma grid must contain at least 3 distinct values")
    i_c_con, i_c_tau_con, i_c_fix = [], [], []
    for g0 in gamma_grid:
        beam = BeamParams(gamma0=g0, density=beam_template.density, spread=beam_template.spread)
        base = normalized_gain(laser, beam)
        intensity = laser.intensity_w_cm2 * hold_gain_at / base
        laser_con = type(laser)(laser.wavelength, intensity, laser.duration)
        _, flux_w, _, tau_g, _ = critical_intensity(laser_con, beam)
        i_c_con.append(flux_w)
        i_c_tau_con.append(flux_w * tau_g)
        _, flux_fix, _, _, _ = critical_intensity(laser, beam)
        i_c_fix.append(flux_fix)
    return {
        "i_c_constrained": (fit_power_law(gamma_grid, i_c_con), i_c_con),
        "i_c_tau_g_constrained": (fit_power_law(gamma_grid, i_c_tau_con), i_c_tau_con),
        "i_c_fixed_intensity": (fit_power_law(gamma_grid, i_c_fix), i_c_fix),
    }
