"""Brute-force particle models of the beam / beat-wave energy exchange.

Two levels of model live here.  The pendulum ensemble advances many beam
electrons in the longitudinal beat potential and either holds the wave field
fixed (ensemble_energy_exchange) or feeds the net work back into the wave
energy density each step (self_consistent_run).  The single-particle pusher
integrates the full transverse equation of motion in the pump fields and is
used to check quiver amplitudes, Doppler frequencies and integrator quality.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from . import _pushers
from .beam import VelocityDistribution, coupling_kappa
from .constants import CONST
from .gain import beat_bracket, landau_growth_rate

# Phase-mixed limit of the bracket average: <B> -> -PHASE_MIX_CONSTANT
# * (omega / q^2) * f'(v_res).  Cross-checked against
# bracket_distribution_average at large t.
PHASE_MIX_CONSTANT = math.pi

MIN_STEPS_PER_BEAT = 20
LINEAR_FIELD_FRACTION = 0.01
QUIVER_WARN_FRACTION = 0.3
MIN_FIT_POINTS = 8


def _gamma_of_v(v):
    return 1.0 / np.sqrt(1.0 - (v / CONST.c) ** 2)


@dataclass
class ParticleEnsemble:
    """Longitudinal phase-space samples: position, velocity, wave phase offset
    and statistical weight per particle."""

    z: np.ndarray
    v: np.ndarray
    phi0: np.ndarray
    weight: np.ndarray

    def __post_init__(self):
        n = self.z.shape[0]
        for name in ("v", "phi0", "weight"):
            if getattr(self, name).shape != (n,):
                raise ValueError(f"{name} must have shape ({n},)")
        if np.any(np.abs(self.v) >= CONST.c):
            raise ValueError("particle speeds must satisfy |v| < c")
        if np.any(self.weight <= 0.0):
            raise ValueError("weights must be positive")

    @property
    def n(self) -> int:
        return self.z.shape[0]

    def copy(self) -> "ParticleEnsemble":
        return ParticleEnsemble(
            self.z.copy(), self.v.copy(), self.phi0.copy(), self.weight.copy()
        )


@dataclass(frozen=True)
class EnsembleConfig:
    """Discretization and sampling controls for an ensemble run.

    t_end must be a whole number of dt steps (the saved time grid is exact);
    use from_steps to build a config from a step count directly.
    """

    n_particles: int
    dt: float
    t_end: float
    seed: int = 0
    phase_sampling: str = "stratified"      # or "uniform"
    velocity_sampling: str = "distribution"  # or "delta"
    save_every: int = 1

    def __post_init__(self):
        if self.n_particles < 1:
            raise ValueError("need at least one particle")
        if self.dt <= 0.0:
            raise ValueError("dt must be positive")
        if self.t_end < self.dt:
            raise ValueError("t_end must cover at least one step")
        n_steps = int(round(self.t_end / self.dt))
        if abs(n_steps * self.dt - self.t_end) > 1.0e-9 * self.t_end:
            raise ValueError("t_end must be a whole number of dt steps")
        if self.phase_sampling not in ("stratified", "uniform"):
            raise ValueError(f"unknown phase sampling {self.phase_sampling!r}")
        if self.velocity_sampling not in ("distribution", "delta"):
            raise ValueError(f"unknown velocity sampling {self.velocity_sampling!r}")
        if self.save_every < 1 or n_steps % self.save_every != 0:
            raise ValueError("save_every must divide the step count")

    @classmethod
    def from_steps(cls, n_particles, t_end, n_steps, **kwargs) -> "EnsembleConfig":
        if n_steps < 1:
            raise ValueError("n_steps must be positive")
        return cls(n_particles=n_particles, dt=t_end / n_steps, t_end=t_end, **kwargs)

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))

    @property
    def n_saves(self) -> int:
        return self.n_steps // self.save_every + 1


def sample_ensemble(config, beam, dist=None) -> ParticleEnsemble:
    """Draw initial particles.  Stratified phases are midpoints of equal bins;
    with stratified phases the velocities are distribution quantiles paired to
    the phases by a seeded random permutation, otherwise both are iid draws.
    All randomness comes from the single seeded generator, so the ensemble is
    reproducible bit for bit.

    Stratified spread sampling is a quiet start: each velocity quantile is
    placed on an antipodal phase pair (phi, phi + pi), which cancels every
    odd order of the per-particle work in the wave field.  Without the
    pairing the mean work carries an O(field) residue about sqrt(n) larger
    than the O(field^2) exchange signal, which can swamp a weak seed wave.
    """
    n = config.n_particles
    rng = np.random.default_rng(config.seed)
    if config.phase_sampling == "stratified":
        phi0 = 2.0 * np.pi * (np.arange(n) + 0.5) / n
    else:
        phi0 = rng.uniform(0.0, 2.0 * np.pi, n)

    if config.velocity_sampling == "delta":
        v = np.full(n, beam.v0)
    else:
        if dist is None:
            dist = VelocityDistribution.from_beam(beam)
        if config.phase_sampling == "stratified":
            if n % 2:
                raise ValueError(
                    "stratified spread sampling needs an even n_particles "
                    "to build antipodal phase pairs"
                )
            half = n // 2
            # phi0[j + half] = phi0[j] + pi, so one quantile per pair
            v_half = dist.quantile_samples(half)[rng.permutation(half)]
            v = np.concatenate([v_half, v_half])
        else:
            v = rng.normal(dist.mean, dist.sigma, n)

    return ParticleEnsemble(
        z=np.zeros(n),
        v=v,
        phi0=phi0,
        weight=np.full(n, 1.0 / n),
    )


def _check_step_resolution(v, wave, dt) -> float:
    """Return steps per beat period, raising if below MIN_STEPS_PER_BEAT."""
    alpha_max = float(np.max(np.abs(wave.alpha(v))))
    if alpha_max == 0.0:
        return math.inf
    steps = 2.0 * np.pi / (alpha_max * abs(dt))
    if steps < MIN_STEPS_PER_BEAT:
        raise ValueError(
            f"dt gives {steps:.1f} steps per beat period; "
            f"need at least {MIN_STEPS_PER_BEAT}"
        )
    return steps


def _maybe_warn_quiver(laser, beam) -> float:
    """Warn when the design quiver amplitude leaves the weak-coupling regime."""
    v_x = CONST.e * laser.field / (CONST.m_e * laser.omega0)
    fraction = 2.0 * v_x / (beam.gamma0 * CONST.c)
    if fraction > QUIVER_WARN_FRACTION:
        warnings.warn(
            f"transverse quiver is {fraction:.2f} of c; the longitudinal "
            "pendulum reduction is unreliable at this intensity",
            stacklevel=3,
        )
    return fraction


def integrate_pendulum(ensemble, laser, beam, wave, dt, n_steps, t0=0.0, kernel="numba"):
    """Advance a copy of the ensemble in a frozen beat wave of field wave.field.

    Returns the evolved ensemble and the per-particle work array (erg).  The
    step must resolve the beat period of the fastest particle.
    """
    if kernel not in ("numba", "numpy"):
        raise ValueError(f"unknown kernel {kernel!r}")
    _check_step_resolution(ensemble.v, wave, dt)
    amplitude = coupling_kappa(laser, beam) * CONST.e * wave.field / CONST.m_e
    ens = ensemble.copy()
    w = np.zeros(ens.n)
    step = (
        _pushers.pendulum_step_rk4
        if kernel == "numba"
        else _pushers.pendulum_step_rk4_numpy
    )
    for k in range(n_steps):
        step(
            ens.z, ens.v, w, ens.phi0, amplitude, wave.q, wave.beat_omega,
            t0 + k * dt, dt, CONST.m_e, CONST.c,
        )
    return ens, w


def bracket_distribution_average(t, wave, dist, n_points=20001, width_sigmas=8.0):
    """Velocity-distribution average of the beat bracket by direct quadrature.

    Returns <B>(t) so that the mean per-particle work rate is the bracket
    prefactor times this value.  The grid must resolve the oscillation scale
    pi / (q t); n_points is sized for the default test windows.
    """
    v = np.linspace(
        dist.mean - width_sigmas * dist.sigma,
        dist.mean + width_sigmas * dist.sigma,
        n_points,
    )
    f = dist.pdf(v)
    alpha = wave.alpha(v)
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(t_arr.shape)
    for i, ti in enumerate(t_arr):
        out[i] = trapezoid(f * beat_bracket(ti, alpha, wave.beat_omega), v)
    return out if np.ndim(t) else float(out[0])


def resonance_heating_term(t, alpha):
    """sin(alpha t) / alpha with its alpha -> 0 limit t; broadcasts over t
    and alpha.

    Scaled by 3 gamma0^2 beta^2 this extends the quadratic-velocity work
    bracket to the relativistic energy response: near resonance the particle
    energy grows faster than m v0 delta-v because gamma itself rises with v.
    The term is always a heating term; in the phase-mixed regime it is down
    by sigma / v_res relative to the slope term.
    """
    t_in = np.asarray(t, dtype=float)
    a_in = np.asarray(alpha, dtype=float)
    scalar = t_in.ndim == 0 and a_in.ndim == 0
    t_b, a_b = np.broadcast_arrays(np.atleast_1d(t_in), np.atleast_1d(a_in))
    x = a_b * t_b
    small = np.abs(x) < 1.0e-4
    out = np.empty(t_b.shape, dtype=float)
    xs = x[small]
    out[small] = t_b[small] * (1.0 - xs * xs / 6.0 * (1.0 - xs * xs / 20.0))
    a_safe = np.where(small, 1.0, a_b)
    large = ~small
    out[large] = (np.sin(x[large]) / a_safe[large])
    return float(out.reshape(-1)[0]) if scalar else out


def relativistic_work_factor(beam) -> float:
    """Energy-response enhancement 1 + 3 gamma0^2 beta^2 at exact resonance."""
    return 1.0 + 3.0 * beam.gamma0**2 * beam.beta**2


def heating_distribution_average(t, wave, dist, n_points=20001, width_sigmas=8.0):
    """Velocity-distribution average of sin(alpha t)/alpha by quadrature."""
    v = np.linspace(
        dist.mean - width_sigmas * dist.sigma,
        dist.mean + width_sigmas * dist.sigma,
        n_points,
    )
    f = dist.pdf(v)
    alpha = wave.alpha(v)
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(t_arr.shape)
    for i, ti in enumerate(t_arr):
        out[i] = trapezoid(f * resonance_heating_term(ti, alpha), v)
    return out if np.ndim(t) else float(out[0])


def kinetic_growth_prediction(laser, beam, dist, wave) -> float:
    """Wave energy-density growth rate implied by the phase-mixed ensemble
    work rate, for a seeded wave resonant inside the velocity distribution."""
    kappa = coupling_kappa(laser, beam)
    omega_bpe_sq = 4.0 * np.pi * beam.density * CONST.e**2 / CONST.m_e
    slope = dist.slope(wave.v_res)
    return float(
        0.5
        * PHASE_MIX_CONSTANT
        * beam.gamma0**3
        * kappa**2
        * omega_bpe_sq
        * wave.beat_omega
        / wave.q**2
        * slope
    )


def heating_growth_prediction(laser, beam, dist, wave) -> float:
    """Wave energy-density drain rate from the slope-independent part of the
    relativistic energy response, in the phase-mixed limit.

    The sin(alpha t)/alpha heating kernel tends to pi * f(v_res) / q per unit
    prefactor, so even a zero-slope distribution bleeds the wave at this rate.
    It is down by roughly delta_v / v_res relative to the slope term and sets
    the floor visible in zero-slope control runs.
    """
    kappa = coupling_kappa(laser, beam)
    omega_bpe_sq = 4.0 * np.pi * beam.density * CONST.e**2 / CONST.m_e
    return float(
        -1.5
        * np.pi
        * beam.gamma0**5
        * beam.beta**2
        * kappa**2
        * omega_bpe_sq
        * dist.pdf(wave.v_res)
        / wave.q
    )


def mixing_time(wave, dist) -> float:
    """Phase-mixing transient: one beat wavelength of velocity shear."""
    if dist is None or dist.sigma <= 0.0:
        return 0.0
    return 2.0 * np.pi / (wave.k_g * dist.sigma)


@dataclass(frozen=True)
class ExchangeResult:
    """Fixed-field energy-exchange series and the windowed secular rate.

    Three energy measures are tracked, each with its own second-order theory:

    * perturbation_energy, (m/2)gamma0^3 <(v - v_init)^2>: the squared
      velocity perturbation.  Its rate (measured_rate) matches the beat
      bracket only at small alpha*t; at finite detuning it is pure phase
      diffusion, sin(alpha t)/alpha per particle.
    * quadratic_energy, (m/2)gamma0^3 <v^2 - v_init^2>: the non-relativistic
      kinetic-energy change.  Its rate equals the beat bracket (theory_rate)
      at every time in the linear regime.
    * mean_work: the exact relativistic work.  Its rate carries the extra
      energy-response heating term (work_theory_rate).

    The secular comparison (verdict) uses the exact work, because that is
    what the self-consistent field ledger exchanges with the wave.
    """

    t: np.ndarray
    mean_work: np.ndarray          # <W>(t), erg per electron, exact work
    perturbation_energy: np.ndarray  # (m/2) gamma0^3 <(v - v_init)^2>, erg
    quadratic_energy: np.ndarray   # (m/2) gamma0^3 <v^2 - v_init^2>, erg
    measured_rate: np.ndarray      # d perturbation_energy / dt, erg/s
    quadratic_rate: np.ndarray     # d quadratic_energy / dt, erg/s
    work_rate: np.ndarray          # d<W>/dt, erg/s
    theory_rate: np.ndarray        # beat-bracket prediction, erg/s
    work_theory_rate: np.ndarray   # bracket + heating-term prediction, erg/s
    theory_energy: np.ndarray      # time integral of theory_rate
    secular_rate: float            # windowed mean work rate, erg/s
    secular_stderr: float          # bootstrap standard error of secular_rate
    predicted_rate: float          # linear-theory prediction of secular_rate
    window: tuple
    verdict: str                   # match / mismatch / inconclusive
    per_particle_rate: np.ndarray  # windowed work rate per particle


def _verdict(secular, stderr, predicted) -> str:
    # below 3 bootstrap standard errors the comparison has no power either
    # way, so it is inconclusive rather than failed
    if abs(predicted) <= 3.0 * stderr:
        return "inconclusive"
    if secular * predicted <= 0.0:
        return "mismatch"
    ratio = secular / predicted
    return "match" if 0.5 <= ratio <= 2.0 else "mismatch"


def ensemble_energy_exchange(
    laser, beam, wave, config, dist=None, with_theory=True
) -> ExchangeResult:
    """Drive an ensemble with a frozen beat wave and compare the measured
    energy exchange against the second-order bracket theory.

    The secular rate is the mean per-particle work rate over the window that
    starts after the phase-mixing transient; its standard error comes from a
    bootstrap over particles (over antipodal pairs for stratified spread
    sampling, where the pairing is the variance-control unit).  The secular
    comparison needs n_particles of order 1e4 or more to have any power at
    typical seed fields.
    """
    if wave.field <= 0.0:
        raise ValueError("wave.field must be positive")
    if config.velocity_sampling == "distribution" and dist is None:
        dist = VelocityDistribution.from_beam(beam)
    ens = sample_ensemble(config, beam, dist)
    _check_step_resolution(ens.v, wave, config.dt)
    _maybe_warn_quiver(laser, beam)

    kappa = coupling_kappa(laser, beam)
    amplitude = kappa * CONST.e * wave.field / CONST.m_e
    pref = (
        beam.gamma0**3 * kappa**2 * (CONST.e * wave.field) ** 2 / (2.0 * CONST.m_e)
    )
    dt = config.dt
    v_init = ens.v.copy()
    w = np.zeros(ens.n)

    delta_mode = config.velocity_sampling == "delta"
    t_mix = 0.0 if delta_mode else mixing_time(wave, dist)
    if t_mix >= config.t_end:
        t_mix = 0.5 * config.t_end

    n_saves = config.n_saves
    t_s = np.empty(n_saves)
    work_s = np.empty(n_saves)
    pert_s = np.empty(n_saves)
    quad_s = np.empty(n_saves)
    t_s[0] = 0.0
    work_s[0] = 0.0
    pert_s[0] = 0.0
    quad_s[0] = 0.0
    row = 1

    w_window = None
    t_window = 0.0
    half_m = 0.5 * CONST.m_e * beam.gamma0**3

    for k in range(config.n_steps):
        _pushers.pendulum_step_rk4(
            ens.z, ens.v, w, ens.phi0, amplitude, wave.q, wave.beat_omega,
            k * dt, dt, CONST.m_e, CONST.c,
        )
        t_now = (k + 1) * dt
        if w_window is None and t_now >= t_mix:
            w_window = w.copy()
            t_window = t_now
        if (k + 1) % config.save_every == 0:
            dv = ens.v - v_init
            t_s[row] = t_now
            work_s[row] = float(np.sum(ens.weight * w))
            pert_s[row] = half_m * float(np.sum(ens.weight * (dv * dv)))
            quad_s[row] = half_m * float(np.sum(ens.weight * (dv * (ens.v + v_init))))
            row += 1

    measured_rate = np.gradient(pert_s, t_s)
    quadratic_rate = np.gradient(quad_s, t_s)
    rate_s = np.gradient(work_s, t_s)

    if with_theory:
        # the beat bracket is the quadratic-measure theory; the exact work
        # adds the 3 gamma0^2 beta^2 energy-response heating term
        rel = 3.0 * beam.gamma0**2 * beam.beta**2
        if delta_mode:
            alpha0 = float(wave.alpha(beam.v0))
            bracket = pref * beat_bracket(t_s, alpha0, wave.beat_omega)
            heating = pref * rel * resonance_heating_term(t_s, alpha0)
        else:
            bracket = pref * bracket_distribution_average(t_s, wave, dist)
            heating = pref * rel * heating_distribution_average(t_s, wave, dist)
        theory_rate = bracket
        work_theory_rate = bracket + heating
        theory_energy = cumulative_trapezoid(theory_rate, t_s, initial=0.0)
    else:
        theory_rate = np.full(n_saves, np.nan)
        work_theory_rate = np.full(n_saves, np.nan)
        theory_energy = np.full(n_saves, np.nan)

    if w_window is None:
        w_window = np.zeros(ens.n)
        t_window = 0.0
    span = config.t_end - t_window
    if span <= 0.0:
        raise ValueError("mixing window leaves no span to average over")
    per_particle_rate = (w - w_window) / span
    secular = float(np.sum(ens.weight * per_particle_rate))
    # resample antipodal pairs as units so the bootstrap keeps the quiet
    # start's odd-order cancellation; otherwise the stderr is inflated by
    # the O(field) oscillating work that the pairing removes from the mean
    paired = (
        config.phase_sampling == "stratified"
        and config.velocity_sampling == "distribution"
    )
    if paired:
        half = ens.n // 2
        rate_units = 0.5 * (per_particle_rate[:half] + per_particle_rate[half:])
    else:
        rate_units = per_particle_rate
    stderr = bootstrap_stderr(rate_units, seed=config.seed + 1)

    if delta_mode:
        mask = t_s >= t_window
        predicted = float(np.mean(work_theory_rate[mask])) if with_theory else np.nan
    else:
        u_g = wave.field**2 / (4.0 * np.pi)
        rate = landau_growth_rate(
            laser, beam, dist=dist, kappa_mode="exact", slope_mode="gaussian",
            wave=wave,
        ).growth_rate_exact
        predicted = -rate * u_g / beam.density if beam.density > 0.0 else 0.0

    return ExchangeResult(
        t=t_s,
        mean_work=work_s,
        perturbation_energy=pert_s,
        quadratic_energy=quad_s,
        measured_rate=measured_rate,
        quadratic_rate=quadratic_rate,
        work_rate=rate_s,
        theory_rate=theory_rate,
        work_theory_rate=work_theory_rate,
        theory_energy=theory_energy,
        secular_rate=secular,
        secular_stderr=stderr,
        predicted_rate=predicted,
        window=(t_window, config.t_end),
        verdict=_verdict(secular, stderr, predicted),
        per_particle_rate=per_particle_rate,
    )


def _ols_slope(x, y):
    """Least-squares slope of y(x) and its standard error.

    The error bar uses an AR(1) effective-sample-size inflation because the
    residuals of an oscillatory series are serially correlated and the naive
    iid formula would be overconfident.
    """
    n = x.shape[0]
    xc = x - x.mean()
    sxx = float(np.sum(xc * xc))
    if sxx == 0.0:
        return float("nan"), float("nan")
    slope = float(np.sum(xc * y) / sxx)
    r = y - y.mean() - slope * xc
    ssr = float(np.sum(r * r))
    var = ssr / max(n - 2, 1)
    inflation = 1.0
    if n > 3 and ssr > 0.0:
        rho = float(np.sum(r[:-1] * r[1:]) / ssr)
        rho = min(max(rho, 0.0), 0.999)
        inflation = (1.0 + rho) / (1.0 - rho)
    return slope, math.sqrt(var / sxx * inflation)


@dataclass(frozen=True)
class RunResult:
    """Self-consistent run series, energy bookkeeping and the fitted rate."""

    t: np.ndarray
    field_energy: np.ndarray       # wave energy density u(t), erg/cm^3
    kinetic_energy: np.ndarray     # beam kinetic density, erg/cm^3
    field_amplitude: np.ndarray    # E_g(t), statvolt/cm
    mean_work: np.ndarray          # <W>(t), erg per electron
    residual: np.ndarray           # |step change of (kinetic + field)| / total(0)
    growth_rate: np.ndarray        # d ln u / dt series
    max_residual: float
    fitted_growth_rate: float      # slope of ln u over the fit window (nan if unfit)
    fitted_growth_rate_stderr: float  # AR(1)-corrected standard error of the slope
    fit_start: float
    predicted_growth_rate: float   # exact-kappa gaussian-slope formula (nan for delta)
    truncated: bool
    truncate_reason: str
    diagnostics: dict


def self_consistent_run(laser, beam, wave, config, dist=None) -> RunResult:
    """Advance the ensemble and the wave energy density together.

    The wave field is frozen during each step and then updated from the work
    balance u = u0 - n_b <W>, so the recorded residual is exactly the
    work-energy mismatch of the integrator.  The run truncates (with a flag)
    if the field leaves the linear regime or the wave energy is exhausted.
    """
    if wave.field <= 0.0:
        raise ValueError("seed field must be positive")
    if config.velocity_sampling == "distribution" and dist is None:
        dist = VelocityDistribution.from_beam(beam)
    ens = sample_ensemble(config, beam, dist)
    steps_per_beat = _check_step_resolution(ens.v, wave, config.dt)
    quiver_fraction = _maybe_warn_quiver(laser, beam)

    kappa = coupling_kappa(laser, beam)
    n_b = beam.density
    dt = config.dt
    m_c2 = CONST.m_e * CONST.c**2

    u0 = wave.field**2 / (4.0 * np.pi)
    w = np.zeros(ens.n)
    kinetic0 = n_b * m_c2 * (float(np.sum(ens.weight * _gamma_of_v(ens.v))) - 1.0)
    total0 = kinetic0 + u0

    n_saves = config.n_saves
    t_s = np.empty(n_saves)
    u_s = np.empty(n_saves)
    k_s = np.empty(n_saves)
    e_s = np.empty(n_saves)
    work_s = np.empty(n_saves)
    resid_s = np.empty(n_saves)
    t_s[0] = 0.0
    u_s[0] = u0
    k_s[0] = kinetic0
    e_s[0] = wave.field
    work_s[0] = 0.0
    resid_s[0] = 0.0
    row = 1

    u = u0
    e_g = wave.field
    e_max = LINEAR_FIELD_FRACTION * laser.field
    total_prev = total0
    truncated = False
    reason = ""
    max_e_g = e_g

    for k in range(config.n_steps):
        amplitude = kappa * CONST.e * e_g / CONST.m_e
        _pushers.pendulum_step_rk4(
            ens.z, ens.v, w, ens.phi0, amplitude, wave.q, wave.beat_omega,
            k * dt, dt, CONST.m_e, CONST.c,
        )
        mean_w = float(np.sum(ens.weight * w))
        u = u0 - n_b * mean_w
        if u <= 0.0:
            truncated = True
            reason = "wave energy exhausted"
            break
        e_g = math.sqrt(4.0 * np.pi * u)
        max_e_g = max(max_e_g, e_g)
        if (k + 1) % config.save_every == 0:
            kinetic = n_b * m_c2 * (float(np.sum(ens.weight * _gamma_of_v(ens.v))) - 1.0)
            total = kinetic + u
            t_s[row] = (k + 1) * dt
            u_s[row] = u
            k_s[row] = kinetic
            e_s[row] = e_g
            work_s[row] = mean_w
            resid_s[row] = abs(total - total_prev) / total0
            total_prev = total
            row += 1
        if e_g > e_max:
            truncated = True
            reason = "field left the linear regime"
            break

    t_s = t_s[:row]
    u_s = u_s[:row]
    k_s = k_s[:row]
    e_s = e_s[:row]
    work_s = work_s[:row]
    resid_s = resid_s[:row]

    growth = np.gradient(np.log(u_s), t_s) if row > 2 else np.full(row, np.nan)

    t_mix = mixing_time(wave, dist) if config.velocity_sampling == "distribution" else 0.0
    if t_mix <= 0.0 or t_mix >= t_s[-1]:
        t_fit = 0.5 * t_s[-1]
    else:
        t_fit = t_mix
    mask = t_s >= t_fit
    if int(np.count_nonzero(mask)) >= MIN_FIT_POINTS:
        fitted, fit_stderr = _ols_slope(t_s[mask], np.log(u_s[mask]))
    else:
        fitted, fit_stderr = float("nan"), float("nan")

    if config.velocity_sampling == "distribution":
        predicted = landau_growth_rate(
            laser, beam, dist=dist, kappa_mode="exact", slope_mode="gaussian",
            wave=wave,
        ).growth_rate_exact
        phase_mixed = kinetic_growth_prediction(laser, beam, dist, wave)
        heating = heating_growth_prediction(laser, beam, dist, wave)
    else:
        predicted = float("nan")
        phase_mixed = float("nan")
        heating = float("nan")

    bounce_phase = math.sqrt(wave.q * kappa * CONST.e * max_e_g / CONST.m_e) * t_s[-1]
    diagnostics = {
        "steps_per_beat": float(steps_per_beat),
        "quiver_fraction": float(quiver_fraction),
        "bounce_phase": float(bounce_phase),
        "mixing_time": float(t_mix),
        "seed_fraction": float(wave.field / laser.field),
        "field_gain_factor": float(e_s[-1] / wave.field),
        "phase_mixed_rate": float(phase_mixed),
        "heating_rate": float(heating),
    }

    return RunResult(
        t=t_s,
        field_energy=u_s,
        kinetic_energy=k_s,
        field_amplitude=e_s,
        mean_work=work_s,
        residual=resid_s,
        growth_rate=growth,
        max_residual=float(np.max(resid_s)),
        fitted_growth_rate=fitted,
        fitted_growth_rate_stderr=fit_stderr,
        fit_start=float(t_fit),
        predicted_growth_rate=predicted,
        truncated=truncated,
        truncate_reason=reason,
        diagnostics=diagnostics,
    )


def bootstrap_stderr(values, n_boot=200, seed=0) -> float:
    """Bootstrap standard error of the mean of values."""
    values = np.asarray(values)
    n = values.shape[0]
    rng = np.random.default_rng(seed)
    means = np.empty(n_boot)
    for b in range(n_boot):
        means[b] = values[rng.integers(0, n, n)].mean()
    return float(means.std(ddof=1))


@dataclass(frozen=True)
class Trajectory:
    """Single-particle trajectory in the pump fields."""

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    ux: np.ndarray
    uy: np.ndarray
    uz: np.ndarray
    field_mode: str

    @property
    def gamma(self) -> np.ndarray:
        return np.sqrt(1.0 + (self.ux**2 + self.uy**2 + self.uz**2) / CONST.c**2)

    @property
    def vx(self) -> np.ndarray:
        return self.ux / self.gamma

    @property
    def vz(self) -> np.ndarray:
        return self.uz / self.gamma

    @property
    def final_state(self) -> np.ndarray:
        return np.array(
            [self.x[-1], self.y[-1], self.z[-1], self.ux[-1], self.uy[-1], self.uz[-1]]
        )


def doppler_omega(laser, beam) -> float:
    """Pump frequency seen along the beam orbit for a counter-moving pump."""
    return laser.omega0 * (1.0 + beam.beta)


def push_single(laser, state, t0, dt, n_steps, field_mode="paper", save_every=1) -> Trajectory:
    """Integrate one electron from a (x, y, z, ux, uy, uz) state.

    dt may be negative to run the motion backwards.  The step must resolve
    the Doppler period implied by the initial longitudinal velocity.
    """
    if field_mode not in ("paper", "vacuum"):
        raise ValueError(f"unknown field mode {field_mode!r}")
    state = np.asarray(state, dtype=float)
    if state.shape != (6,):
        raise ValueError("state must be (x, y, z, ux, uy, uz)")
    gamma = math.sqrt(1.0 + float(state[3] ** 2 + state[4] ** 2 + state[5] ** 2) / CONST.c**2)
    beta = float(state[5]) / (gamma * CONST.c)
    period = 2.0 * np.pi / (laser.omega0 * (1.0 + abs(beta)))
    if period / abs(dt) < MIN_STEPS_PER_BEAT:
        raise ValueError(
            f"dt gives {period / abs(dt):.1f} steps per Doppler period; "
            f"need at least {MIN_STEPS_PER_BEAT}"
        )
    out = _pushers.push_single_rk4(
        (float(state[0]), float(state[1]), float(state[2]),
         float(state[3]), float(state[4]), float(state[5])),
        laser.field, laser.k0, CONST.c, -CONST.e / CONST.m_e,
        t0, dt, n_steps, save_every, field_mode == "paper",
    )
    return Trajectory(
        t=out[:, 0], x=out[:, 1], y=out[:, 2], z=out[:, 3],
        ux=out[:, 4], uy=out[:, 5], uz=out[:, 6], field_mode=field_mode,
    )


def integrate_single_particle(
    laser, beam, t_end=None, dt=None, field_mode="paper", save_every=1
) -> Trajectory:
    """Integrate a beam electron started on axis with u = (0, 0, gamma0 v0).

    t_end defaults to 20 periods of the Doppler-shifted pump seen by the
    particle and dt to 1/400 of that period.  dt must resolve the particle
    frame period with at least 20 steps.
    """
    period = 2.0 * np.pi / doppler_omega(laser, beam)
    if t_end is None:
        t_end = 20.0 * period
    if dt is None:
        dt = period / 400.0
    n_steps = max(1, int(round(t_end / dt)))
    state = (0.0, 0.0, 0.0, 0.0, 0.0, beam.gamma0 * beam.v0)
    _maybe_warn_quiver(laser, beam)
    return push_single(laser, state, 0.0, dt, n_steps, field_mode, save_every)


def quiver_amplitude_prediction(laser, beam, field_mode="paper") -> float:
    """Transverse velocity amplitude from integrating the pump force along
    the unperturbed orbit (cm/s)."""
    v_x = CONST.e * laser.field / (CONST.m_e * laser.omega0)
    if field_mode == "vacuum":
        return v_x / beam.gamma0
    if field_mode == "paper":
        beta = beam.beta
        return v_x * math.sqrt(1.0 + beta**2) / ((1.0 + beta) * beam.gamma0)
    raise ValueError(f"unknown field mode {field_mode!r}")


def fit_sinusoid_amplitude(t, y, omega) -> float:
    """Least-squares amplitude of y(t) = a cos(omega t) + b sin(omega t) + c."""
    design = np.column_stack([np.cos(omega * t), np.sin(omega * t), np.ones_like(t)])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return float(np.hypot(coef[0], coef[1]))
