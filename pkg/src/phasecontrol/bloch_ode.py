"""
Fixed-step RK4 integration of the optical Bloch equations.

    du/dt = -delta v - u / T2
    dv/dt =  delta u - v / T2 + omega_eff w
    dw/dt = -(w - w_e) / T1 - omega_eff v

with 1/T2 = gamma_d + gamma_p and 1/T1 = gamma_d. At delta = gamma_d = 0 these
are the pure-dephasing equations solved in closed form by
:mod:`phasecontrol.analytic`, which this module checks independently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .domain import (CLAMP_TOL, BlochState, EffectiveDrive, PhaseControlError,
                     Relaxation, SingularityError, StabilityError, TimeSeries)

#: Largest allowed step * (fastest rate).
STABILITY_LIMIT = 0.1
NORM_TOL = 1e-6
_BLOCK = 1024


def fastest_rate(drive: EffectiveDrive, relax: Relaxation) -> float:
    return max(drive.omega_eff, relax.gamma_p + relax.gamma_d, abs(relax.delta))


def default_step(drive: EffectiveDrive, relax: Relaxation) -> float:
    return min(1e-3, 0.02 / max(fastest_rate(drive, relax), 1.0))


@dataclass(frozen=True)
class OdeParams:
    drive: EffectiveDrive
    relax: Relaxation
    step: float
    t_end: float

    def __post_init__(self):
        if not (math.isfinite(self.step) and self.step > 0):
            raise PhaseControlError(f"step must be > 0, got {self.step}")
        if not (math.isfinite(self.t_end) and self.t_end >= 0):
            raise PhaseControlError(f"t_end must be >= 0, got {self.t_end}")
        if self.t_end > 0 and self.step > self.t_end:
            raise PhaseControlError(f"step {self.step} exceeds t_end {self.t_end}")
        if self.step * fastest_rate(self.drive, self.relax) > STABILITY_LIMIT:
            raise StabilityError(
                f"step {self.step} too large: step * max rate must be <= {STABILITY_LIMIT}")

    @classmethod
    def with_default_step(cls, drive, relax, t_end):
        h = default_step(drive, relax)
        if t_end > 0:
            h = min(h, t_end)
        return cls(drive, relax, h, t_end)


def derivative(state: BlochState, drive: EffectiveDrive, relax: Relaxation) -> BlochState:
    """Time derivative (du/dt, dv/dt, dw/dt) of ``state``."""
    du, dv, dw = _rhs(drive, relax)(state.u, state.v, state.w)
    return BlochState(du, dv, dw)


def _rhs(drive: EffectiveDrive, relax: Relaxation):
    om = drive.omega_eff
    delta = relax.delta
    g2 = relax.gamma_d + relax.gamma_p
    g1 = relax.gamma_d
    w_e = relax.w_e

    def f(u, v, w):
        du = -delta * v - g2 * u
        dv = delta * u - g2 * v + om * w
        dw = -om * v
        if g1 != 0:
            # gamma_d = 0 means no T1 term at all
            dw -= g1 * (w - w_e)
        return du, dv, dw

    return f


def rk4_step(f, y, h):
    """One classical Runge-Kutta step for ``y' = f(*y)`` on a tuple of floats."""
    k1 = f(*y)
    k2 = f(*(yi + 0.5 * h * ki for yi, ki in zip(y, k1)))
    k3 = f(*(yi + 0.5 * h * ki for yi, ki in zip(y, k2)))
    k4 = f(*(yi + h * ki for yi, ki in zip(y, k3)))
    return tuple(yi + h / 6.0 * (a + 2.0 * b + 2.0 * c + d)
                 for yi, a, b, c, d in zip(y, k1, k2, k3, k4))


def _step_map(f, h):
    # The vector field is affine, so one RK4 step is the affine map y -> M y + c.
    # Read it off by stepping the origin and the unit vectors.
    c = np.array(rk4_step(f, (0.0, 0.0, 0.0), h))
    M = np.empty((3, 3))
    for j in range(3):
        e = [0.0, 0.0, 0.0]
        e[j] = 1.0
        M[:, j] = np.array(rk4_step(f, tuple(e), h)) - c
    return M, c


def _propagate(M, c, y0, n_steps):
    """States after 0..n_steps applications of y -> M y + c; shape (n_steps+1, 3)."""
    out = np.empty((n_steps + 1, 3))
    out[0] = y0
    if n_steps == 0:
        return out
    block = min(_BLOCK, n_steps)
    powers = np.empty((block + 1, 3, 3))
    offsets = np.empty((block + 1, 3))
    powers[0] = np.eye(3)
    offsets[0] = 0.0
    for k in range(1, block + 1):
        powers[k] = M @ powers[k - 1]
        offsets[k] = M @ offsets[k - 1] + c
    y = np.asarray(y0, dtype=float)
    i = 0
    while i < n_steps:
        k = min(block, n_steps - i)
        out[i + 1:i + k + 1] = powers[1:k + 1] @ y + offsets[1:k + 1]
        y = out[i + k]
        i += k
    return out


def integrate(initial: BlochState, params: OdeParams) -> TimeSeries:
    """Integrate from t = 0 to ``params.t_end`` with fixed-step RK4.

    Output is sampled on every step; the last step is shortened (or
    stretched by round-off only) so the grid ends exactly on ``t_end``.

    Raises
    ------
    StabilityError
        If the Bloch vector norm exceeds 1 + 1e-6 anywhere, which signals a
        step that is too large.
    """
    f = _rhs(params.drive, params.relax)
    h, t_end = params.step, params.t_end
    y0 = np.array([initial.u, initial.v, initial.w], dtype=float)
    if np.dot(y0, y0) > 1.0 + CLAMP_TOL:
        raise PhaseControlError(f"initial state {initial} lies outside the Bloch ball")
    if t_end == 0:
        times = np.zeros(1)
        states = y0[None, :]
    else:
        n_steps = max(1, math.ceil(t_end / h - 1e-9))
        M, c = _step_map(f, h)
        states = _propagate(M, c, y0, n_steps - 1)
        last = rk4_step(f, tuple(states[-1]), t_end - (n_steps - 1) * h)
        states = np.vstack([states, last])
        times = np.arange(n_steps + 1) * h
        times[-1] = t_end
    norms = np.sqrt(np.einsum("ij,ij->i", states, states))
    if np.any(~np.isfinite(norms)) or np.any(norms > 1.0 + NORM_TOL):
        raise StabilityError("Bloch vector left the unit ball; reduce the step")
    meta = {"method": "ode", "drive": params.drive, "relax": params.relax, "step": h}
    return TimeSeries(times, states, meta)


def steady_state_general(drive: EffectiveDrive, relax: Relaxation) -> BlochState:
    """Fixed point of the Bloch equations.

    Raises
    ------
    SingularityError
        Without population decay the fixed point is unique only if there is
        dephasing and a nonzero drive; otherwise the system is singular.
    """
    om, delta = drive.omega_eff, relax.delta
    g2 = relax.gamma_d + relax.gamma_p
    g1 = relax.gamma_d
    if g1 == 0 and (relax.gamma_p == 0 or om == 0):
        raise SingularityError(
            "steady state undefined: no population decay and "
            + ("no dephasing" if relax.gamma_p == 0 else "no drive"))
    A = np.array([[-g2, -delta, 0.0],
                  [delta, -g2, om],
                  [0.0, -om, -g1]])
    b = np.array([0.0, 0.0, -g1 * relax.w_e])
    try:
        x = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise SingularityError(f"steady-state system is singular: {exc}") from exc
    return BlochState(*map(float, x))
