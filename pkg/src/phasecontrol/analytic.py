"""
Closed-form dynamics of a resonantly driven, purely dephasing two-level system.

Starting from the ground state (u, v, w) = (0, 0, -1), the inversion obeys

    w'' + gamma_p w' + omega_eff**2 w = 0,

a damped oscillator whose character is set by gamma_p versus 2 omega_eff.
u stays zero and v = -w' / omega_eff.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .domain import BlochState, PhaseControlError, clamp_probability

UNDERDAMPED = "underdamped"
CRITICAL = "critical"
OVERDAMPED = "overdamped"


@dataclass(frozen=True)
class Regime:
    """Damping regime of the inversion equation.

    ``s`` is the damped oscillation frequency (underdamped only);
    ``lambdas`` = (lambda_1, lambda_2) with lambda_2 < lambda_1 <= 0
    (overdamped only).
    """

    tag: str
    s: float | None = None
    lambdas: tuple[float, float] | None = None


def _band(omega_eff: float, gamma_p: float) -> float:
    return 1e-9 * max(gamma_p, 2.0 * omega_eff, 1.0)


def classify_regime(omega_eff: float, gamma_p: float) -> Regime:
    """Classify ``(omega_eff, gamma_p)`` as under-, over- or critically damped.

    Points within a relative band of 1e-9 around gamma_p = 2 omega_eff count
    as critical.
    """
    if omega_eff < 0 or gamma_p < 0:
        raise PhaseControlError("omega_eff and gamma_p must be >= 0")
    band = _band(omega_eff, gamma_p)
    two_omega = 2.0 * omega_eff
    if gamma_p < two_omega - band:
        s = 0.5 * math.sqrt((two_omega - gamma_p) * (two_omega + gamma_p))
        return Regime(UNDERDAMPED, s=s)
    if gamma_p > two_omega + band:
        root = math.sqrt((gamma_p - two_omega) * (gamma_p + two_omega))
        lam2 = -0.5 * (gamma_p + root)
        # product of the roots is omega_eff**2; avoids cancellation in lam1
        lam1 = omega_eff * omega_eff / lam2
        return Regime(OVERDAMPED, lambdas=(lam1, lam2))
    return Regime(CRITICAL)


def _check_time(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(t)) or np.any(t < 0):
        raise PhaseControlError("time must be finite and >= 0")
    return t


def _one_minus_decay(a: np.ndarray) -> np.ndarray:
    """1 - e^{-a} (1 + a) without cancellation at small a."""
    out = np.empty_like(a)
    small = a < 0.5
    x = a[small]
    term, acc = x * x / 2.0, np.zeros_like(x)
    for k in range(3, 24):
        acc += term
        term = term * x / k
    out[small] = np.exp(-x) * acc
    big = a[~small]
    out[~small] = 1.0 - np.exp(-big) * (1.0 + big)
    return out


def _sinc(x: np.ndarray):
    """sin(x)/x and 1 - sin(x)/x, the latter accurate near 0."""
    x2 = x * x
    series = x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)))
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = np.sin(x) / x
    one_minus = np.where(np.abs(x) < 0.1, series, 1.0 - direct)
    return 1.0 - one_minus, one_minus


def _sinhc(y: np.ndarray):
    """sinh(y)/y and sinh(y)/y - 1, the latter accurate near 0."""
    y2 = y * y
    series = y2 / 6.0 * (1.0 + y2 / 20.0 * (1.0 + y2 / 42.0 * (1.0 + y2 / 72.0)))
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        direct = np.sinh(y) / y
    minus_one = np.where(np.abs(y) < 0.1, series, direct - 1.0)
    return 1.0 + minus_one, minus_one


def _inversion(omega_eff: float, gamma_p: float, t: np.ndarray):
    """Return 1 + w(t) and v(t) for the ground-state initial condition.

    The regime formulas are regrouped so the O(1) and O(t) terms of 1 + w
    cancel analytically rather than in floating point; 1 + w then keeps its
    relative precision as t -> 0.
    """
    if omega_eff < 0 or gamma_p < 0:
        raise PhaseControlError("omega_eff and gamma_p must be >= 0")
    t = np.atleast_1d(t).astype(float)
    if omega_eff == 0:
        return np.zeros_like(t), np.zeros_like(t)
    regime = classify_regime(omega_eff, gamma_p)
    a = 0.5 * gamma_p * t
    env = np.exp(-a)
    base = _one_minus_decay(a)
    if regime.tag == UNDERDAMPED:
        x = regime.s * t
        sinc, one_minus_sinc = _sinc(x)
        f = base + env * (2.0 * np.sin(0.5 * x) ** 2 + a * one_minus_sinc)
        v = -omega_eff * t * env * sinc
    elif regime.tag == OVERDAMPED:
        lam1, lam2 = regime.lambdas
        q = 0.5 * (lam1 - lam2)
        y = q * t
        f = np.empty_like(t)
        v = np.empty_like(t)
        near = a < 1.0
        sh, sh_minus_one = _sinhc(y[near])
        f[near] = base[near] - env[near] * (2.0 * np.sinh(0.5 * y[near]) ** 2
                                            + a[near] * sh_minus_one)
        v[near] = -omega_eff * t[near] * env[near] * sh
        far = ~near
        e1, e2 = np.exp(lam1 * t[far]), np.exp(lam2 * t[far])
        f[far] = 1.0 + (-lam2 * e1 + lam1 * e2) / (lam2 - lam1)
        v[far] = omega_eff * (e1 - e2) / (lam2 - lam1)
    else:
        f = base
        v = -omega_eff * t * env
    return f, v


def rho22_analytic(omega_eff: float, gamma_p: float, t):
    """Excited-state population at time(s) ``t`` from the closed-form solution.

    Parameters
    ----------
    omega_eff : float
        Effective Rabi frequency, >= 0.
    gamma_p : float
        Pure dephasing rate, >= 0.
    t : float or array_like
        Times >= 0.

    Returns
    -------
    float or ndarray
        rho22 in [0, 1], with the same shape as ``t``.
    """
    t = _check_time(t)
    f, _ = _inversion(omega_eff, gamma_p, t)
    return clamp_probability(0.5 * f.reshape(t.shape))


def bloch_trajectory(omega_eff: float, gamma_p: float, t) -> np.ndarray:
    """Closed-form (u, v, w) at each time in ``t``; shape ``(len(t), 3)``."""
    t = np.atleast_1d(_check_time(t))
    f, v = _inversion(omega_eff, gamma_p, t)
    return np.column_stack([np.zeros_like(t), v, f - 1.0])


def bloch_analytic(omega_eff: float, gamma_p: float, t: float) -> BlochState:
    """Closed-form Bloch vector at a single time ``t``."""
    u, v, w = bloch_trajectory(omega_eff, gamma_p, t)[0]
    if omega_eff < 1e-12:
        v = 0.0
    return BlochState(float(u), float(v), float(w))


def rho22_weak_field(mag_h: float, cap_phi, t):
    """Lowest-order population for equal pathway magnitudes and no dephasing.

    Returns ``mag_h**2 (1 + cos Phi) t**2 / 2``. Only meaningful while
    omega_eff * t is small; the caller owns that check.
    """
    t = _check_time(t)
    if mag_h < 0:
        raise PhaseControlError("mag_h must be >= 0")
    out = 0.5 * mag_h * mag_h * (1.0 + np.cos(cap_phi)) * t * t
    return float(out) if np.ndim(out) == 0 else out


def rho22_short_time(omega_eff: float, t):
    """Short-time population omega_eff**2 t**2 / 4."""
    t = _check_time(t)
    out = 0.25 * omega_eff * omega_eff * t * t
    return float(out) if np.ndim(out) == 0 else out


def steady_state_population(gamma_p: float) -> float:
    """Long-time rho22: 1/2 under any dephasing, undefined without it."""
    if gamma_p <= 0:
        raise PhaseControlError("no steady state without dephasing (gamma_p = 0)")
    return 0.5
