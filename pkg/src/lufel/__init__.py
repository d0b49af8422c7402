"""Laser-undulator FEL design calculator with a brute-force particle oracle."""

from .beam import (
    BeamParams,
    LaserParams,
    RadiationWave,
    VelocityDistribution,
    coupling_kappa,
    kappa_sq_paper,
    quiver_velocity,
    resonant_radiation,
    slope_at_resonance,
    slope_paper,
    wave_for_resonance_velocity,
)
from .constants import (
    CONST,
    PhysicalConstants,
    beam_plasma_frequency,
    field_to_intensity,
    intensity_to_field,
    photon_energy_kev,
    wavelength_to_omega,
)
from .cases import (
    CASE_A,
    CASE_B,
    CASE_C,
    DAMPING_CONTROL,
    EXCHANGE_CASES,
    ZERO_SLOPE_CONTROL,
    ExchangeCase,
)
from .ensemble import (
    EnsembleConfig,
    ExchangeResult,
    ParticleEnsemble,
    RunResult,
    Trajectory,
    bracket_distribution_average,
    doppler_omega,
    ensemble_energy_exchange,
    fit_sinusoid_amplitude,
    heating_distribution_average,
    heating_growth_prediction,
    integrate_pendulum,
    integrate_single_particle,
    kinetic_growth_prediction,
    mixing_time,
    push_single,
    quiver_amplitude_prediction,
    relativistic_work_factor,
    resonance_heating_term,
    sample_ensemble,
    self_consistent_run,
)
from .gain import (
    GainResult,
    beat_bracket,
    compound_criterion,
    energy_loss_rate,
    landau_growth_rate,
    normalized_gain,
    scaling_audit,
)
from .quantum import (
    FrameBoost,
    QuantumLimits,
    band_gap,
    boost_to_beam_frame,
    critical_intensity,
    diffraction_threshold,
    noise_field_bound,
    quantum_limits,
    scaling_claims_check,
)

__version__ = "0.1.0"

__all__ = [
    "BeamParams",
    "CASE_A",
    "CASE_B",
    "CASE_C",
    "CONST",
    "DAMPING_CONTROL",
    "EXCHANGE_CASES",
    "EnsembleConfig",
    "ExchangeCase",
    "ExchangeResult",
    "FrameBoost",
    "GainResult",
    "LaserParams",
    "ParticleEnsemble",
    "PhysicalConstants",
    "QuantumLimits",
    "RadiationWave",
    "RunResult",
    "Trajectory",
    "VelocityDistribution",
    "ZERO_SLOPE_CONTROL",
    "band_gap",
    "beam_plasma_frequency",
    "beat_bracket",
    "boost_to_beam_frame",
    "bracket_distribution_average",
    "compound_criterion",
    "coupling_kappa",
    "critical_intensity",
    "diffraction_threshold",
    "doppler_omega",
    "energy_loss_rate",
    "ensemble_energy_exchange",
    "field_to_intensity",
    "fit_sinusoid_amplitude",
    "heating_distribution_average",
    "heating_growth_prediction",
    "integrate_pendulum",
    "integrate_single_particle",
    "intensity_to_field",
    "kappa_sq_paper",
    "kinetic_growth_prediction",
    "landau_growth_rate",
    "mixing_time",
    "noise_field_bound",
    "normalized_gain",
    "photon_energy_kev",
    "push_single",
    "quantum_limits",
    "quiver_amplitude_prediction",
    "quiver_velocity",
    "relativistic_work_factor",
    "resonance_heating_term",
    "resonant_radiation",
    "sample_ensemble",
    "scaling_audit",
    "scaling_claims_check",
    "self_consistent_run",
    "slope_at_resonance",
    "slope_paper",
    "wave_for_resonance_velocity",
    "wavelength_to_omega",
]
