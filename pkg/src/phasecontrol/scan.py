"""
Control experiments: population time series, phase-control profiles for
square pulses, the degree of control, and the parameter grids behind the
two standard figures (population vs. time, population vs. phase).
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from . import analytic
from .bloch_ode import OdeParams, default_step, integrate
from .domain import (BlochState, EffectiveDrive, PathwaySet, PhaseControlError,
                     Profile, Relaxation, TimeSeries, clamp_probability)
from .drive import effective_drive, effective_omega

METHODS = ("analytic", "ode")

#: Representative dephasing rates for the population-vs-time figure, spanning
#: all three regimes relative to omega_eff = 2 pi.
FIG1_OMEGA_EFF = 2 * math.pi
FIG1_GAMMAS = (0.0, math.pi, 2 * math.pi, 4 * math.pi, 6 * math.pi)
FIG1_T_END = 3.0
FIG1_SAMPLES = 301

FIG2_MAGS = (2 * math.pi, math.pi / 5)
FIG2_GAMMAS = (0.0, math.pi)
FIG2_T_OFFS = (0.25, 0.5, 0.75, 2.0)
DEFAULT_N_PHI = 64


def _check_method(method: str, relax: Relaxation):
    if method not in METHODS:
        raise PhaseControlError(f"unknown method {method!r}; expected one of {METHODS}")
    if method == "analytic" and not relax.pure_dephasing:
        raise PhaseControlError(
            "analytic method requires delta = 0 and gamma_d = 0 "
            f"(got delta={relax.delta}, gamma_d={relax.gamma_d})")


def _as_drive(drive: PathwaySet | EffectiveDrive) -> EffectiveDrive:
    if isinstance(drive, PathwaySet):
        return effective_drive(drive)
    return drive


def _ode_on_grid(drive: EffectiveDrive, relax: Relaxation, times: np.ndarray,
                 step: float | None = None) -> np.ndarray:
    """RK4 states at each point of a uniform grid starting at 0."""
    if len(times) < 2 or times[-1] == 0:
        return np.tile(BlochState.ground().as_array(), (len(times), 1))
    spacing = times[1] - times[0]
    h = step if step is not None else default_step(drive, relax)
    per_sample = max(1, math.ceil(spacing / h - 1e-9))
    h = spacing / per_sample
    ts = integrate(BlochState.ground(), OdeParams(drive, relax, h, float(times[-1])))
    idx = np.arange(len(times)) * per_sample
    if ts.states.shape[0] != (len(times) - 1) * per_sample + 1:
        idx = np.searchsorted(ts.times, times - 0.5 * h)
    return ts.states[idx]


def time_series(pathways: PathwaySet | EffectiveDrive, relax: Relaxation, t_end: float,
                n_samples: int, method: str = "analytic",
                step: float | None = None) -> TimeSeries:
    """Bloch trajectory from the ground state on a uniform grid over [0, t_end].

    ``pathways`` may also be an :class:`EffectiveDrive` to bypass the
    interference step. The ``ode`` method accepts an explicit RK4 ``step``;
    it is shrunk so the grid points fall on integration steps.
    """
    _check_method(method, relax)
    if n_samples < 2:
        raise PhaseControlError(f"n_samples must be >= 2, got {n_samples}")
    if not (math.isfinite(t_end) and t_end >= 0):
        raise PhaseControlError(f"t_end must be >= 0, got {t_end}")
    drive = _as_drive(pathways)
    times = np.linspace(0.0, t_end, n_samples)
    if method == "analytic":
        states = analytic.bloch_trajectory(drive.omega_eff, relax.gamma_p, times)
    else:
        states = _ode_on_grid(drive, relax, times, step)
    meta = {"method": method, "drive": drive, "relax": relax}
    if isinstance(pathways, PathwaySet):
        meta["pathways"] = pathways
    return TimeSeries(times, states, meta)


def phase_grid(n_phi: int) -> np.ndarray:
    """Uniform grid on [0, 2 pi); hits pi exactly when ``n_phi`` is even."""
    return math.pi * (2.0 * np.arange(n_phi) / n_phi)


def phase_profile(mag_a: float, mag_b: float, theta_diff: float, relax: Relaxation,
                  t_off: float, n_phi: int = DEFAULT_N_PHI,
                  method: str = "analytic") -> Profile:
    """Population at square-pulse turn-off versus the relative laser phase.

    The laser phase phi runs over a uniform grid on [0, 2 pi); the
    interference phase is Phi = phi + theta_diff, with theta_diff the
    difference of the pathway phases (0 or pi for real matrix elements).
    """
    _check_method(method, relax)
    if n_phi < 2:
        raise PhaseControlError(f"n_phi must be >= 2, got {n_phi}")
    if mag_a < 0 or mag_b < 0:
        raise PhaseControlError("pathway magnitudes must be >= 0")
    if not (math.isfinite(t_off) and t_off >= 0):
        raise PhaseControlError(f"t_off must be >= 0, got {t_off}")
    phis = phase_grid(n_phi)
    cap_phis = phis + theta_diff if theta_diff != 0 else phis.copy()
    omegas = effective_omega(mag_a, mag_b, cap_phis)
    if method == "analytic":
        rho = np.array([analytic.rho22_analytic(om, relax.gamma_p, t_off) for om in omegas])
    else:
        rho = np.empty(n_phi)
        for i, om in enumerate(omegas):
            w = _ode_on_grid(EffectiveDrive(float(om)), relax, np.array([0.0, t_off]))[-1, 2]
            rho[i] = clamp_probability(0.5 * (1.0 + w))
    meta = {"mag_a": mag_a, "mag_b": mag_b, "theta_diff": theta_diff,
            "gamma_p": relax.gamma_p, "relax": relax, "method": method}
    return Profile(phis, cap_phis, omegas, rho, t_off, meta)


def degree_of_control(p: Profile) -> float:
    """Spread max - min of the excited-state population over the profile."""
    if len(p) == 0:
        raise PhaseControlError("degree of control of an empty profile")
    return float(np.max(p.rho22) - np.min(p.rho22))


def sweep_fig1(omega_eff: float = FIG1_OMEGA_EFF, gamma_list=FIG1_GAMMAS,
               t_end: float = FIG1_T_END, n_samples: int = FIG1_SAMPLES) -> list[TimeSeries]:
    """One analytic time series per dephasing rate, all on the same grid."""
    out = []
    for gamma_p in gamma_list:
        if gamma_p < 0:
            raise PhaseControlError(f"dephasing rate must be >= 0, got {gamma_p}")
        ts = time_series(EffectiveDrive(omega_eff), Relaxation(gamma_p=gamma_p),
                         t_end, n_samples, "analytic")
        ts.meta.update(omega_eff=omega_eff, gamma_p=gamma_p)
        out.append(ts)
    return out


def sweep_fig2(mag_list=FIG2_MAGS, gamma_list=FIG2_GAMMAS, t_off_list=FIG2_T_OFFS,
               n_phi: int = DEFAULT_N_PHI, method: str = "analytic") -> list[Profile]:
    """Equal-magnitude profiles over the Cartesian product of the inputs.

    Results come in the iteration order of the inputs; each profile's meta
    carries its ``(mag, gamma_p, t_off)`` triple under ``"params"``.
    """
    out = []
    for mag, gamma_p, t_off in itertools.product(mag_list, gamma_list, t_off_list):
        prof = phase_profile(mag, mag, 0.0, Relaxation(gamma_p=gamma_p), t_off, n_phi, method)
        prof.meta["params"] = (mag, gamma_p, t_off)
        out.append(prof)
    return out
