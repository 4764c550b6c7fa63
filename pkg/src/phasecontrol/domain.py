"""
Value types shared across the package.

Units: hbar = 1 and every rate, frequency and time is dimensionless, so time
is measured in inverse frequency units. Angles are radians and are never
normalized.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

#: Values within this distance of a physical bound are clamped, beyond it rejected.
CLAMP_TOL = 1e-9


class PhaseControlError(ValueError):
    """Base class for invalid inputs and numerical failures."""


class UnphysicalStateError(PhaseControlError):
    """A Bloch vector or population lies outside the physical region."""


class SingularityError(PhaseControlError):
    """A denominator or linear system is singular."""


class StabilityError(PhaseControlError):
    """The fixed-step integrator was asked for a step it cannot take safely."""


def _finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


def as_complex(value: complex | float) -> complex:
    """Coerce a matrix element to ``complex`` and reject NaN/Inf components."""
    z = complex(value)
    if not _finite(z.real, z.imag):
        raise PhaseControlError(f"matrix element must be finite, got {z!r}")
    return z


@dataclass(frozen=True)
class LaserField:
    """One CW field component: real amplitude, phase and angular frequency."""

    amplitude: float
    phase: float = 0.0
    frequency: float = 0.0

    def __post_init__(self):
        if not _finite(self.amplitude, self.phase, self.frequency):
            raise PhaseControlError("laser field parameters must be finite")
        if self.amplitude < 0:
            raise PhaseControlError(f"field amplitude must be >= 0, got {self.amplitude}")


@dataclass(frozen=True)
class PathwaySet:
    """Two interfering excitation pathways and the controllable laser phase.

    ``mag_a``/``theta_a`` play the role of the one-photon (harmonic) Rabi
    frequency, ``mag_b``/``theta_b`` the multiphoton (fundamental) one.
    """

    mag_a: float
    theta_a: float
    mag_b: float
    theta_b: float
    phi: float

    def __post_init__(self):
        if not _finite(self.mag_a, self.theta_a, self.mag_b, self.theta_b, self.phi):
            raise PhaseControlError("pathway parameters must be finite")
        if self.mag_a < 0 or self.mag_b < 0:
            raise PhaseControlError("pathway magnitudes must be >= 0")


@dataclass(frozen=True)
class EffectiveDrive:
    """Single-mode equivalent of the two-pathway drive."""

    omega_eff: float
    theta: float = 0.0
    cap_phi: float = 0.0

    def __post_init__(self):
        if not _finite(self.omega_eff, self.theta, self.cap_phi):
            raise PhaseControlError("effective drive must be finite")
        if self.omega_eff < 0:
            raise PhaseControlError(f"omega_eff must be >= 0, got {self.omega_eff}")


@dataclass(frozen=True)
class Relaxation:
    """Dephasing, population decay, detuning and equilibrium populations.

    With ``gamma_d == 0`` there is no T1 relaxation at all; ``t1`` is then
    reported as ``inf`` but never used in arithmetic.
    """

    gamma_p: float = 0.0
    gamma_d: float = 0.0
    delta: float = 0.0
    sigma_1e: float = 1.0
    sigma_2e: float = 0.0

    def __post_init__(self):
        validate_relaxation(self)

    @property
    def pure_dephasing(self) -> bool:
        return self.delta == 0 and self.gamma_d == 0

    @property
    def t1(self) -> float:
        return math.inf if self.gamma_d == 0 else 1.0 / self.gamma_d

    @property
    def t2(self) -> float:
        rate = self.gamma_d + self.gamma_p
        return math.inf if rate == 0 else 1.0 / rate

    @property
    def w_e(self) -> float:
        return self.sigma_2e - self.sigma_1e


def validate_relaxation(r: Relaxation) -> Relaxation:
    """Return ``r`` unchanged if its invariants hold, raise otherwise."""
    values = (r.gamma_p, r.gamma_d, r.delta, r.sigma_1e, r.sigma_2e)
    if not _finite(*values):
        raise PhaseControlError(f"relaxation parameters must be finite, got {values}")
    if r.gamma_p < 0 or r.gamma_d < 0:
        raise PhaseControlError(
            f"rates must be >= 0, got gamma_p={r.gamma_p}, gamma_d={r.gamma_d}")
    for s in (r.sigma_1e, r.sigma_2e):
        if not 0.0 <= s <= 1.0:
            raise PhaseControlError(f"equilibrium populations must lie in [0, 1], got {s}")
    if abs(r.sigma_1e + r.sigma_2e - 1.0) > 1e-12:
        raise PhaseControlError(
            f"equilibrium populations must sum to 1, got {r.sigma_1e} + {r.sigma_2e}")
    return r


@dataclass(frozen=True)
class BlochState:
    """Bloch vector in the frame rotated by the effective phase theta.

    u = 2 Re(sigma_12 e^{-i theta}), v = 2 Im(sigma_12 e^{-i theta}),
    w = sigma_22 - sigma_11.
    """

    u: float
    v: float
    w: float

    @classmethod
    def ground(cls) -> BlochState:
        return cls(0.0, 0.0, -1.0)

    def as_array(self) -> np.ndarray:
        return np.array([self.u, self.v, self.w])

    @property
    def norm2(self) -> float:
        return self.u * self.u + self.v * self.v + self.w * self.w


def rho22_of(state: BlochState | float) -> float:
    """Excited-state population (1 + w)/2 of a Bloch state (or a bare ``w``).

    Raises
    ------
    UnphysicalStateError
        If ``|w|`` exceeds 1 by more than the clamping tolerance.
    """
    w = state.w if isinstance(state, BlochState) else float(state)
    if not abs(w) <= 1.0 + CLAMP_TOL:
        raise UnphysicalStateError(f"inversion w={w} outside [-1, 1]")
    return min(1.0, max(0.0, (1.0 + w) / 2.0))


def rho11_of(state: BlochState | float) -> float:
    w = state.w if isinstance(state, BlochState) else float(state)
    return 1.0 - rho22_of(w)


def clamp_probability(p: np.ndarray | float) -> np.ndarray | float:
    """Clamp values within ``CLAMP_TOL`` of [0, 1]; reject anything further out."""
    arr = np.asarray(p, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < -CLAMP_TOL) or np.any(arr > 1 + CLAMP_TOL):
        raise UnphysicalStateError(f"probability outside [0, 1]: {p}")
    out = np.clip(arr, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class LevelTriple:
    """One (n, m) intermediate-level term of the three-photon matrix element."""

    mu_1n: complex
    mu_nm: complex
    mu_m2: complex
    omega_n1: float
    omega_2m: float

    def __post_init__(self):
        for name in ("mu_1n", "mu_nm", "mu_m2"):
            object.__setattr__(self, name, as_complex(getattr(self, name)))
        if not _finite(self.omega_n1, self.omega_2m):
            raise PhaseControlError("level frequencies must be finite")


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Bloch trajectory sampled on an increasing time grid.

    ``states`` has shape ``(len(times), 3)`` with columns u, v, w.
    """

    times: np.ndarray
    states: np.ndarray
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        states = np.asarray(self.states, dtype=float).reshape(-1, 3)
        if len(times) != len(states):
            raise PhaseControlError("times and states must have equal length")
        if len(times) > 1 and np.any(np.diff(times) < 0):
            raise PhaseControlError("times must be increasing")
        if np.any(np.abs(states[:, 2]) > 1 + CLAMP_TOL):
            raise UnphysicalStateError("inversion outside [-1, 1] in time series")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", states)

    def __len__(self):
        return len(self.times)

    def state(self, i: int) -> BlochState:
        return BlochState(*map(float, self.states[i]))

    @property
    def u(self) -> np.ndarray:
        return self.states[:, 0]

    @property
    def v(self) -> np.ndarray:
        return self.states[:, 1]

    @property
    def w(self) -> np.ndarray:
        return self.states[:, 2]

    @property
    def rho22(self) -> np.ndarray:
        return np.clip((1.0 + self.w) / 2.0, 0.0, 1.0)


@dataclass(frozen=True, eq=False)
class Profile:
    """Excited-state population at pulse turn-off versus control phase.

    ``phis`` is the scanned laser phase grid; ``cap_phis`` the corresponding
    interference phase Phi. The two coincide when theta_h - theta_f = 0.
    """

    phis: np.ndarray
    cap_phis: np.ndarray
    omega_eff: np.ndarray
    rho22: np.ndarray
    t_off: float
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        arrays = {}
        for name in ("phis", "cap_phis", "omega_eff", "rho22"):
            arrays[name] = np.asarray(getattr(self, name), dtype=float)
            object.__setattr__(self, name, arrays[name])
        if len({len(a) for a in arrays.values()}) != 1:
            raise PhaseControlError("profile arrays must have equal length")
        if len(self.phis) > 1 and np.any(np.diff(self.phis) <= 0):
            raise PhaseControlError("profile phase grid must be strictly increasing")
        if np.any(self.rho22 < 0) or np.any(self.rho22 > 1):
            raise UnphysicalStateError("profile populations outside [0, 1]")

    def __len__(self):
        return len(self.phis)
