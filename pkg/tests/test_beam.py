"""Parameter containers, resonance kinematics, and the velocity distribution."""

import math

import numpy as np
import pytest

from lufel.beam import (
    BeamParams,
    LaserParams,
    RadiationWave,
    VelocityDistribution,
    coupling_kappa,
    kappa_eq_orbit_literal,
    kappa_sq_paper,
    quiver_velocity,
    resonant_radiation,
    slope_at_resonance,
    slope_paper,
    wave_for_resonance_velocity,
)
from lufel.constants import CONST


def design_laser():
    return LaserParams.from_lab_units(1.0, 1.0e18, 1.0)


def design_beam():
    return BeamParams(gamma0=10.0, density=1.0e19, spread=0.01)


# frozen values at the design point (1 um, 1e18 W/cm^2, 1 ps, gamma0 = 10)
A0_DESIGN = 8.549297007268e-1
OMEGA_TAU_DESIGN = 1.883651567309e3
V_X_DESIGN = 2.563014763981e10          # cm/s, e E0 / (m_e omega0)
KAPPA_SQ_RATIO = 1.827261982962e-4      # exact coupling^2 over the crude I18 form
LAMBDA_G_10_NM = 2.5                    # large-gamma0 resonance at gamma0 = 10
LAMBDA_G_100_NM = 2.5e-2                # and at gamma0 = 100
K_G_REL_ERR_10 = -2.506281446688e-3     # exact vs approx wavenumber, gamma0 = 10
K_G_REL_ERR_100 = -2.500062480215e-5
PHOTON_KEV_10 = 4.959367934289e-1
PHOTON_KEV_100 = 4.959367934289e1


class TestLaserParams:
    def test_lab_unit_construction(self):
        laser = design_laser()
        assert math.isclose(laser.wavelength, 1.0e-4, rel_tol=1e-12)
        assert math.isclose(laser.duration, 1.0e-12, rel_tol=1e-12)
        assert laser.intensity_w_cm2 == 1.0e18

    def test_derived_properties(self):
        laser = design_laser()
        assert math.isclose(laser.a0, A0_DESIGN, rel_tol=1e-9)
        assert math.isclose(laser.i18, 1.0, rel_tol=1e-12)
        assert math.isclose(laser.omega_tau, OMEGA_TAU_DESIGN, rel_tol=1e-9)
        assert math.isclose(laser.omega0, CONST.c * laser.k0, rel_tol=1e-12)

    def test_zero_intensity_allowed(self):
        laser = LaserParams.from_lab_units(1.0, 0.0, 1.0)
        assert laser.field == 0.0
        assert laser.a0 == 0.0

    def test_validation(self):
        with pytest.raises(ValueError, match="wavelength"):
            LaserParams(0.0, 1.0e18, 1.0e-12)
        with pytest.raises(ValueError, match="intensity"):
            LaserParams(1.0e-4, -1.0, 1.0e-12)
        with pytest.raises(ValueError, match="duration"):
            LaserParams(1.0e-4, 1.0e18, 0.0)


class TestBeamParams:
    def test_kinematics(self):
        beam = design_beam()
        assert math.isclose(beam.beta, math.sqrt(1.0 - 1.0e-2), rel_tol=1e-12)
        assert math.isclose(beam.v0, beam.beta * CONST.c, rel_tol=1e-12)
        # delta_v = c zeta / gamma0^2
        assert math.isclose(beam.delta_v, CONST.c * 1.0e-4, rel_tol=1e-12)
        assert math.isclose(beam.n20, 0.1, rel_tol=1e-12)

    def test_zero_density_and_spread_allowed(self):
        beam = BeamParams(gamma0=10.0, density=0.0, spread=0.0)
        assert beam.n20 == 0.0
        assert beam.delta_v == 0.0

    def test_validation(self):
        with pytest.raises(ValueError, match="gamma0"):
            BeamParams(gamma0=1.0, density=1.0e19, spread=0.01)
        with pytest.raises(ValueError, match="density"):
            BeamParams(gamma0=10.0, density=-1.0, spread=0.01)
        with pytest.raises(ValueError, match="spread"):
            BeamParams(gamma0=10.0, density=1.0e19, spread=-0.01)


class TestCoupling:
    def test_kappa_reduces_to_a0_over_gamma4(self):
        # gamma0^2 beta^2 + 1 = gamma0^2, so kappa = a0 / gamma0^4 exactly
        laser, beam = design_laser(), design_beam()
        assert math.isclose(
            coupling_kappa(laser, beam), laser.a0 / beam.gamma0**4, rel_tol=1e-12
        )

    def test_kappa_sq_paper(self):
        laser, beam = design_laser(), design_beam()
        assert math.isclose(
            kappa_sq_paper(laser, beam), laser.i18 / (2.5 * beam.gamma0**4), rel_tol=1e-12
        )

    def test_exact_to_crude_ratio(self):
        laser, beam = design_laser(), design_beam()
        ratio = coupling_kappa(laser, beam) ** 2 / kappa_sq_paper(laser, beam)
        assert math.isclose(ratio, KAPPA_SQ_RATIO, rel_tol=1e-9)

    def test_orbit_literal_exceeds_kappa_by_gamma0(self):
        laser, beam = design_laser(), design_beam()
        assert math.isclose(
            kappa_eq_orbit_literal(laser, beam),
            beam.gamma0 * coupling_kappa(laser, beam),
            rel_tol=1e-12,
        )

    def test_quiver_velocity(self):
        laser, beam = design_laser(), design_beam()
        v_x, v_beam = quiver_velocity(laser, beam)
        assert math.isclose(v_x, V_X_DESIGN, rel_tol=1e-9)
        assert math.isclose(v_beam, 2.0 * v_x / beam.gamma0, rel_tol=1e-12)


class TestResonance:
    def test_approx_wavelength_gamma10(self):
        wave = resonant_radiation(design_laser(), design_beam(), mode="approx")
        assert math.isclose(wave.wavelength_g * 1.0e7, LAMBDA_G_10_NM, rel_tol=1e-12)
        assert math.isclose(wave.photon_kev, PHOTON_KEV_10, rel_tol=1e-9)

    def test_approx_wavelength_gamma100(self):
        beam = BeamParams(gamma0=100.0, density=1.0e19, spread=0.01)
        wave = resonant_radiation(design_laser(), beam, mode="approx")
        assert math.isclose(wave.wavelength_g * 1.0e7, LAMBDA_G_100_NM, rel_tol=1e-12)
        assert math.isclose(wave.photon_kev, PHOTON_KEV_100, rel_tol=1e-9)

    def test_exact_vs_approx_agreement(self):
        laser = design_laser()
        for gamma0, expected in ((10.0, K_G_REL_ERR_10), (100.0, K_G_REL_ERR_100)):
            beam = BeamParams(gamma0=gamma0, density=1.0e19, spread=0.01)
            exact = resonant_radiation(laser, beam, mode="exact")
            approx = resonant_radiation(laser, beam, mode="approx")
            rel = exact.k_g / approx.k_g - 1.0
            assert math.isclose(rel, expected, rel_tol=1e-6)
            assert abs(rel) < 5.0e-3

    def test_unknown_mode(self):
        with pytest.raises(ValueError, match="resonance mode"):
            resonant_radiation(design_laser(), design_beam(), mode="wrong")


class TestRadiationWave:
    def test_beat_kinematics(self):
        wave = resonant_radiation(design_laser(), design_beam(), mode="exact")
        assert math.isclose(wave.q, wave.k_g + wave.k0, rel_tol=1e-12)
        assert math.isclose(
            wave.beat_omega, CONST.c * (wave.k_g - wave.k0), rel_tol=1e-12
        )
        # stationary beat phase: q v_res = beat_omega
        assert math.isclose(wave.v_res * wave.q, wave.beat_omega, rel_tol=1e-12)
        assert wave.alpha(wave.v_res) == pytest.approx(0.0, abs=1e-6 * wave.beat_omega)

    def test_alpha_is_linear_in_velocity(self):
        wave = resonant_radiation(design_laser(), design_beam(), mode="exact")
        dv = 1.0e5
        assert math.isclose(wave.alpha(wave.v_res + dv), wave.q * dv, rel_tol=1e-9)

    def test_exact_resonance_matches_doppler_upshift(self):
        laser, beam = design_laser(), design_beam()
        wave = resonant_radiation(laser, beam, mode="exact")
        assert math.isclose(
            wave.k_g, 2.0 * laser.k0 / (1.0 - beam.beta), rel_tol=1e-12
        )

    def test_with_field(self):
        wave = resonant_radiation(design_laser(), design_beam())
        seeded = wave.with_field(12.5)
        assert seeded.field == 12.5
        assert seeded.k_g == wave.k_g and seeded.k0 == wave.k0
        assert wave.field == 0.0

    def test_validation(self):
        with pytest.raises(ValueError, match="wavenumbers"):
            RadiationWave(k_g=0.0, k0=1.0)
        with pytest.raises(ValueError, match="field"):
            RadiationWave(k_g=1.0, k0=1.0, field=-1.0)

    def test_wave_for_resonance_velocity_inverts(self):
        laser = design_laser()
        v = 0.9 * CONST.c
        wave = wave_for_resonance_velocity(laser, v)
        assert math.isclose(wave.v_res, v, rel_tol=1e-12)

    def test_wave_for_resonance_velocity_bounds(self):
        laser = design_laser()
        with pytest.raises(ValueError, match="v_res"):
            wave_for_resonance_velocity(laser, -1.0)
        with pytest.raises(ValueError, match="v_res"):
            wave_for_resonance_velocity(laser, CONST.c)


class TestVelocityDistribution:
    def test_from_beam(self):
        beam = design_beam()
        dist = VelocityDistribution.from_beam(beam)
        assert dist.mean == beam.v0
        assert dist.sigma == beam.delta_v

    def test_pdf_normalization(self):
        dist = VelocityDistribution.from_beam(design_beam())
        v = np.linspace(dist.mean - 8 * dist.sigma, dist.mean + 8 * dist.sigma, 20001)
        assert math.isclose(np.trapezoid(dist.pdf(v), v), 1.0, rel_tol=1e-9)

    def test_slope_is_pdf_derivative(self):
        dist = VelocityDistribution.from_beam(design_beam())
        v = dist.mean + 0.7 * dist.sigma
        h = 1.0e-6 * dist.sigma
        numeric = (dist.pdf(v + h) - dist.pdf(v - h)) / (2.0 * h)
        assert math.isclose(float(dist.slope(v)), float(numeric), rel_tol=1e-6)

    def test_max_abs_slope_at_one_sigma(self):
        dist = VelocityDistribution.from_beam(design_beam())
        assert math.isclose(
            dist.max_abs_slope(), abs(float(dist.slope(dist.mean + dist.sigma))), rel_tol=1e-12
        )

    def test_crude_slope_overestimates_by_sqrt_2pi_e(self):
        beam = design_beam()
        dist = VelocityDistribution.from_beam(beam)
        ratio = slope_paper(beam) / dist.max_abs_slope()
        assert math.isclose(ratio, math.sqrt(2.0 * math.pi * math.e), rel_tol=1e-12)

    def test_sample_reproducible(self):
        dist = VelocityDistribution.from_beam(design_beam())
        a = dist.sample(1000, seed=3)
        b = dist.sample(1000, seed=3)
        assert np.array_equal(a, b)
        assert abs(np.mean(a) - dist.mean) < 5.0 * dist.sigma / math.sqrt(1000)

    def test_quantile_samples(self):
        dist = VelocityDistribution.from_beam(design_beam())
        q = dist.quantile_samples(4096)
        assert np.all(np.diff(q) > 0.0)
        # midpoint quantiles are symmetric about the mean
        assert np.allclose(q + q[::-1], 2.0 * dist.mean, rtol=1e-12)
        assert math.isclose(float(np.mean(q)), dist.mean, rel_tol=1e-12)
        assert abs(float(np.std(q)) / dist.sigma - 1.0) < 1.0e-3

    def test_validation(self):
        with pytest.raises(ValueError, match="sigma"):
            VelocityDistribution(mean=1.0, sigma=0.0)


class TestSlopeSelection:
    def test_slope_paper_value(self):
        beam = design_beam()
        expected = beam.gamma0**4 / (beam.spread**2 * CONST.c**2)
        assert math.isclose(slope_paper(beam), expected, rel_tol=1e-12)

    def test_slope_paper_needs_spread(self):
        beam = BeamParams(gamma0=10.0, density=1.0e19, spread=0.0)
        with pytest.raises(ValueError, match="spread"):
            slope_paper(beam)

    def test_resonance_inside_window(self):
        dist = VelocityDistribution.from_beam(design_beam())
        v = dist.mean - 1.3 * dist.sigma
        assert slope_at_resonance(dist, v) == float(dist.slope(v))

    def test_far_resonance_falls_back_to_max_slope_point(self):
        dist = VelocityDistribution.from_beam(design_beam())
        v = dist.mean + 20.0 * dist.sigma
        assert slope_at_resonance(dist, v) == float(dist.slope(dist.mean + dist.sigma))
