"""Growth-rate assembly, the normalized design gain, and the beat bracket."""

import math

import numpy as np
import pytest

from lufel.beam import BeamParams, LaserParams, coupling_kappa, kappa_sq_paper
from lufel.constants import CONST
from lufel.gain import (
    beat_bracket,
    compound_criterion,
    energy_loss_rate,
    fit_power_law,
    landau_growth_rate,
    normalized_gain,
    scaling_audit,
)


def design_laser():
    return LaserParams.from_lab_units(1.0, 1.0e18, 1.0)


def design_beam():
    return BeamParams(gamma0=10.0, density=1.0e19, spread=0.01)


# frozen outputs at the design point
GAIN_PAPER = 2.637112194232e1
GAIN_EXACT = 2.640788404783e3       # assembled route with the crude coupling
GAIN_FACTOR = 2.836826277547e11
COMPOUND = 1.883651567309e6
KAPPA_SQ_RATIO = 1.827261982962e-4
# gamma0 exponents fitted over the grid {10, 30, 100}
EXP_PAPER_FORMULA = -3.0
EXP_ASSEMBLED_EXACT = -4.997880482296
EXP_ASSEMBLED_PAPER = -0.997880482296


class TestDesignPoint:
    def test_gain_paper(self):
        result = landau_growth_rate(design_laser(), design_beam())
        assert math.isclose(result.gain_paper, GAIN_PAPER, rel_tol=1e-9)
        assert result.gain == result.gain_paper
        assert result.feasible

    def test_growth_rate_is_gain_over_duration(self):
        laser = design_laser()
        result = landau_growth_rate(laser, design_beam())
        assert math.isclose(
            result.growth_rate_paper, result.gain_paper / laser.duration, rel_tol=1e-12
        )
        assert math.isclose(
            result.gain_exact, result.growth_rate_exact * laser.duration, rel_tol=1e-12
        )

    def test_assembled_gain_with_crude_coupling(self):
        result = landau_growth_rate(design_laser(), design_beam())
        assert math.isclose(result.gain_exact, GAIN_EXACT, rel_tol=1e-9)

    def test_gain_factor(self):
        result = landau_growth_rate(design_laser(), design_beam())
        assert math.isclose(result.gain_factor, GAIN_FACTOR, rel_tol=1e-9)

    def test_method_string(self):
        result = landau_growth_rate(design_laser(), design_beam())
        assert result.method == "paper (kappa=paper, slope=paper, resonance=approx)"

    def test_normalized_gain_matches_result(self):
        assert math.isclose(
            normalized_gain(design_laser(), design_beam()), GAIN_PAPER, rel_tol=1e-9
        )

    def test_compound_criterion(self):
        assert math.isclose(
            compound_criterion(design_laser(), design_beam()), COMPOUND, rel_tol=1e-9
        )


class TestModeSelection:
    def test_exact_coupling_rescales_assembled_gain(self):
        laser, beam = design_laser(), design_beam()
        crude = landau_growth_rate(laser, beam, kappa_mode="paper", slope_mode="paper")
        exact = landau_growth_rate(laser, beam, kappa_mode="exact", slope_mode="paper")
        assert math.isclose(
            exact.gain_exact / crude.gain_exact, KAPPA_SQ_RATIO, rel_tol=1e-9
        )
        assert exact.gain == exact.gain_exact
        assert "exact" in exact.method

    def test_gaussian_slope_at_exact_resonance_damps(self):
        # the exact resonance sits above the distribution mean, where the
        # gaussian slope is negative
        result = landau_growth_rate(
            design_laser(),
            design_beam(),
            kappa_mode="exact",
            slope_mode="gaussian",
            resonance_mode="exact",
        )
        assert result.gain < 0.0
        assert not result.feasible

    def test_gaussian_slope_needs_distribution(self):
        beam = BeamParams(gamma0=10.0, density=1.0e19, spread=0.0)
        with pytest.raises(ValueError, match="distribution"):
            landau_growth_rate(design_laser(), beam, slope_mode="gaussian")

    def test_unknown_modes(self):
        with pytest.raises(ValueError, match="kappa mode"):
            landau_growth_rate(design_laser(), design_beam(), kappa_mode="wrong")
        with pytest.raises(ValueError, match="slope mode"):
            landau_growth_rate(design_laser(), design_beam(), slope_mode="wrong")


class TestEdgeCases:
    def test_zero_density_is_infeasible(self):
        beam = BeamParams(gamma0=10.0, density=0.0, spread=0.01)
        result = landau_growth_rate(design_laser(), beam)
        assert result.gain_paper == 0.0
        assert result.growth_rate_exact == 0.0
        assert not result.feasible
        assert result.gain_factor == 1.0

    def test_zero_spread_rejected_by_normalized_gain(self):
        beam = BeamParams(gamma0=10.0, density=1.0e19, spread=0.0)
        with pytest.raises(ValueError, match="spread"):
            normalized_gain(design_laser(), beam)
        with pytest.raises(ValueError, match="spread"):
            compound_criterion(design_laser(), beam)

    def test_huge_gain_reports_inf_factor(self):
        beam = BeamParams(gamma0=10.0, density=1.0e24, spread=0.01)
        result = landau_growth_rate(design_laser(), beam)
        assert result.gain_paper > 700.0
        assert math.isinf(result.gain_factor)


class TestBeatBracket:
    def test_zero_detuning_is_linear_growth(self):
        t = np.linspace(0.0, 5.0, 7)
        assert np.allclose(beat_bracket(t, 0.0, 1.0e5), t, rtol=1e-12, atol=0.0)

    def test_zero_time(self):
        assert beat_bracket(0.0, 0.3, 1.0e5) == 0.0

    def test_series_matches_direct_where_both_are_accurate(self):
        # alpha t = 1e-2 is far enough from the cutoff that the direct form's
        # cancellation error is below 1e-8 while the series is still converged
        t, omega = 3.7, 1.0e5
        alpha = 1.0e-2 / t
        direct = beat_bracket(t, alpha, omega)
        x = alpha * t
        series = t * math.cos(x) + omega * t * t * (
            -x / 3.0 * (1.0 - x * x / 10.0 * (1.0 - x * x / 28.0))
        )
        assert math.isclose(direct, series, rel_tol=1e-8)

    def test_branch_continuity_without_omega(self):
        # with omega = 0 both branches reduce to t cos(alpha t) exactly
        t = 3.7
        for x in (0.99e-4, 1.01e-4):
            alpha = x / t
            assert math.isclose(
                beat_bracket(t, alpha, 0.0), t * math.cos(x), rel_tol=1e-12
            )

    def test_broadcasts_and_returns_scalar_for_scalars(self):
        t = np.linspace(0.1, 2.0, 5)
        out = beat_bracket(t, 0.01, 1.0e4)
        assert out.shape == (5,)
        alpha = np.array([0.0, 0.01, 0.02])
        out2 = beat_bracket(1.0, alpha, 1.0e4)
        assert out2.shape == (3,)
        scalar = beat_bracket(1.0, 0.01, 1.0e4)
        assert isinstance(scalar, float)

    def test_energy_loss_rate_prefactor(self):
        laser, beam = design_laser(), design_beam()
        kappa = coupling_kappa(laser, beam)
        e_g = 1.0e-4 * laser.field
        t = np.array([1.0e-13, 5.0e-13])
        alpha, omega = 2.0e11, 7.4e17
        pref = beam.gamma0**3 * kappa**2 * (CONST.e * e_g) ** 2 / (2.0 * CONST.m_e)
        expected = pref * beat_bracket(t, alpha, omega)
        got = energy_loss_rate(t, alpha, omega, e_g, kappa, beam.gamma0)
        assert np.allclose(got, expected, rtol=1e-12)
        # at zero detuning the phase-averaged rate grows linearly and stays positive
        assert energy_loss_rate(1.0e-13, 0.0, omega, e_g, kappa, beam.gamma0) > 0.0


class TestScalingAudit:
    def test_fitted_exponents(self):
        audit = scaling_audit(design_laser(), design_beam(), [10.0, 30.0, 100.0])
        assert math.isclose(audit["paper_formula"][0], EXP_PAPER_FORMULA, abs_tol=1e-9)
        assert math.isclose(
            audit["assembled_exact_kappa"][0], EXP_ASSEMBLED_EXACT, abs_tol=1e-6
        )
        assert math.isclose(
            audit["assembled_paper_kappa"][0], EXP_ASSEMBLED_PAPER, abs_tol=1e-6
        )
        for _, values in audit.values():
            assert len(values) == 3

    def test_routes_disagree_by_gamma_squared(self):
        # the two crude-coupling routes differ by two powers of gamma0
        audit = scaling_audit(design_laser(), design_beam(), [10.0, 30.0, 100.0])
        gap = audit["assembled_paper_kappa"][0] - audit["paper_formula"][0]
        assert math.isclose(gap, 2.0, abs_tol=1e-2)

    def test_needs_three_gammas(self):
        with pytest.raises(ValueError, match="3 distinct"):
            scaling_audit(design_laser(), design_beam(), [10.0, 10.0, 10.0])


class TestFitPowerLaw:
    def test_recovers_exponent(self):
        x = [1.0, 2.0, 4.0, 8.0]
        y = [7.0 * v**-2.5 for v in x]
        assert math.isclose(fit_power_law(x, y), -2.5, abs_tol=1e-12)

    def test_needs_three_points(self):
        with pytest.raises(ValueError, match="3 points"):
            fit_power_law([1.0, 2.0], [1.0, 2.0])

    def test_rejects_zeros(self):
        with pytest.raises(ValueError, match="nonzero"):
            fit_power_law([1.0, 2.0, 3.0], [1.0, 0.0, 3.0])
